// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sparsetrain/io.hpp"
#include "sparsetrain/theory.hpp"

namespace sparsetrain {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& expectation) {
    throw std::invalid_argument("config field '" + field + "': " + expectation);
}

std::uint64_t get_uint(const json& j, const std::string& field, std::uint64_t fallback,
                       bool required = false) {
    if (!j.contains(field)) {
        if (required) bad_field(field, "is required");
        return fallback;
    }
    const json& v = j.at(field);
    if (!v.is_number_integer()) bad_field(field, "expected a nonnegative integer");
    if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
        bad_field(field, "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

double get_double(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    const json& v = j.at(field);
    if (!v.is_number()) bad_field(field, "expected a number");
    return v.get<double>();
}

bool get_bool(const json& j, const std::string& field, bool fallback) {
    if (!j.contains(field)) return fallback;
    const json& v = j.at(field);
    if (!v.is_boolean()) bad_field(field, "expected a boolean");
    return v.get<bool>();
}

std::string get_string(const json& j, const std::string& field, const std::string& fallback) {
    if (!j.contains(field)) return fallback;
    const json& v = j.at(field);
    if (!v.is_string()) bad_field(field, "expected a string");
    return v.get<std::string>();
}

}  // namespace

CliConfig parse_cli_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");

    CliConfig config;
    ExperimentConfig& exp = config.experiment;

    if (!root.contains("params") || !root.at("params").is_object()) {
        bad_field("params", "expected an object");
    }
    const json& params = root.at("params");
    exp.params.k_c = static_cast<std::uint32_t>(get_uint(params, "k_c", 0, true));
    exp.params.k_d = static_cast<std::uint32_t>(get_uint(params, "k_d", 0, true));
    exp.params.path_count = static_cast<std::uint32_t>(get_uint(params, "L", 0, true));

    const std::string gain = get_string(params, "gain_model", "constant");
    if (gain == "constant") {
        exp.params.gain_model = GainModel::ConstantMagnitude;
    } else if (gain == "gaussian") {
        exp.params.gain_model = GainModel::Gaussian;
    } else {
        bad_field("params.gain_model", "expected 'constant' or 'gaussian'");
    }

    const std::string sampling = get_string(params, "sampling", "bernoulli");
    if (sampling == "bernoulli") {
        exp.params.sampling_mode = SamplingMode::Bernoulli;
    } else if (sampling == "fixed_count") {
        exp.params.sampling_mode = SamplingMode::FixedCount;
    } else {
        bad_field("params.sampling", "expected 'bernoulli' or 'fixed_count'");
    }

    const std::string scheme = get_string(root, "scheme", "impulse");
    if (scheme == "impulse") {
        exp.scheme = TrainingScheme::Impulse;
    } else if (scheme == "frequency") {
        exp.scheme = TrainingScheme::Frequency;
    } else {
        bad_field("scheme", "expected 'impulse' or 'frequency'");
    }

    const std::string estimator = get_string(root, "estimator", "threshold");
    if (estimator == "threshold") {
        exp.estimator = EstimatorMethod::Threshold;
    } else if (estimator == "bg_posterior") {
        exp.estimator = EstimatorMethod::BGPosterior;
    } else if (estimator == "omp") {
        exp.estimator = EstimatorMethod::OMP;
    } else if (estimator == "iht") {
        exp.estimator = EstimatorMethod::IHT;
    } else {
        bad_field("estimator", "expected threshold, bg_posterior, omp or iht");
    }

    config.rip_c_harmonic = get_double(root, "rip_c_harmonic", 1.0);
    config.rip_c_gaussian = get_double(root, "rip_c_gaussian", 4.0);
    config.measurement_constant = get_double(root, "measurement_constant", 1.0);
    config.compare_snr_rel = get_double(root, "compare_snr_rel", 1.0);

    exp.frequency_measurements = static_cast<std::uint32_t>(get_uint(root, "m", 0));
    if (exp.scheme == TrainingScheme::Frequency && exp.frequency_measurements == 0 &&
        root.contains("rip_c_harmonic")) {
        // Derive m from the harmonic RIP count when not given explicitly.
        exp.params.validate();
        const RipCounts counts =
            rip_counts(exp.params, config.rip_c_harmonic, config.rip_c_gaussian);
        exp.frequency_measurements = static_cast<std::uint32_t>(
            std::min<std::uint64_t>(counts.harmonic_m, exp.params.k_c));
    }

    if (root.contains("snr_grid")) {
        const json& grid = root.at("snr_grid");
        if (!grid.is_array() || grid.empty()) bad_field("snr_grid", "expected a nonempty array");
        for (const json& v : grid) {
            if (!v.is_number()) bad_field("snr_grid", "expected numeric entries");
            exp.snr_grid.push_back(v.get<double>());
        }
    }
    exp.snr_grid_relative = get_bool(root, "snr_grid_relative", true);
    exp.trials_per_point = static_cast<std::uint32_t>(get_uint(root, "trials_per_point", 100));
    exp.master_seed = get_uint(root, "master_seed", 1);
    exp.epsilon = get_double(root, "epsilon", 0.25);
    exp.noiseless = get_bool(root, "noiseless", false);
    exp.sparsity = static_cast<std::uint32_t>(get_uint(root, "sparsity", 0));
    exp.iht_iterations = static_cast<std::uint32_t>(get_uint(root, "iht_iterations", 100));
    exp.support_tol = get_double(root, "support_tol", -1.0);

    return config;
}

CliConfig load_cli_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_cli_config(buffer.str());
}

}  // namespace sparsetrain
