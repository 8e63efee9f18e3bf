// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsetrain {

void ModelParams::validate() const {
    if (k_c == 0) throw std::invalid_argument("params.k_c: must be a positive integer");
    if (k_d == 0) throw std::invalid_argument("params.k_d: must be a positive integer");
    if (k_d > k_c) throw std::invalid_argument("params.k_d: must not exceed k_c");
    if (path_count == 0) throw std::invalid_argument("params.L: must be a positive integer");
    if (path_count > k_d) throw std::invalid_argument("params.L: must not exceed k_d");
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("binary_entropy: p must lie in [0, 1]");
    }
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
    return h;
}

double snr_zero(const ModelParams& params) {
    params.validate();
    return 2.0 * static_cast<double>(params.k_d) *
           binary_entropy(params.activation_probability()) / static_cast<double>(params.k_c);
}

double rate_distortion(const ModelParams& params) {
    params.validate();
    return static_cast<double>(params.k_d) * binary_entropy(params.activation_probability());
}

BaronBounds baron_bounds(const ModelParams& params, double snr) {
    if (!(snr > 0.0)) throw std::domain_error("baron_bounds: snr must be positive");
    const double rate = rate_distortion(params);
    BaronBounds bounds;
    bounds.min_energy = 2.0 * rate;
    const double capacity = 0.5 * std::log1p(snr);
    bounds.min_measurements = static_cast<std::uint64_t>(std::ceil(rate / capacity));
    return bounds;
}

double detection_threshold(const ModelParams& params) {
    return std::sqrt(static_cast<double>(params.k_c) * snr_zero(params) /
                     static_cast<double>(params.path_count));
}

ChannelRealization sample_channel(const ModelParams& params, const Seed& seed) {
    RandomStream stream(seed);
    return sample_channel(params, stream);
}

ChannelRealization sample_channel(const ModelParams& params, RandomStream& stream) {
    params.validate();
    ChannelRealization h;
    h.length = params.k_c;

    if (params.sampling_mode == SamplingMode::FixedCount) {
        h.support = stream.sample_without_replacement(params.k_d, params.path_count);
    } else {
        const double p = params.activation_probability();
        h.support.reserve(static_cast<std::size_t>(2.0 * p * params.k_d) + 8);
        for (std::uint32_t i = 0; i < params.k_d; ++i) {
            if (stream.next_unit() < p) h.support.push_back(i);
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(params.path_count));
    h.gains.resize(h.support.size());
    for (double& g : h.gains) {
        if (params.gain_model == GainModel::ConstantMagnitude) {
            g = stream.next_bit() ? scale : -scale;
        } else {
            g = stream.next_gaussian() * scale;
        }
    }
    return h;
}

const char* to_string(GainModel model) {
    return model == GainModel::ConstantMagnitude ? "constant" : "gaussian";
}

const char* to_string(SamplingMode mode) {
    return mode == SamplingMode::Bernoulli ? "bernoulli" : "fixed_count";
}

}  // namespace sparsetrain
