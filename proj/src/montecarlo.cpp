// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sparsetrain/signals.hpp"

namespace sparsetrain {

namespace {

// Per-trial stream labels; changing these changes every published result.
constexpr std::uint64_t kStreamChannel = 0;
constexpr std::uint64_t kStreamNoise = 1;
constexpr std::uint64_t kStreamSubset = 2;

std::uint64_t trial_seed(const ExperimentConfig& config, std::uint32_t snr_index,
                         std::uint32_t trial_index, std::uint64_t stream) {
    return derive_seed(config.master_seed, {snr_index, trial_index, stream});
}

}  // namespace

void ExperimentConfig::validate() const {
    params.validate();
    if (scheme == TrainingScheme::Frequency) {
        if (frequency_measurements == 0) {
            throw std::invalid_argument("frequency_measurements: must be >= 1 for the frequency scheme");
        }
        if (frequency_measurements > params.k_c) {
            throw std::invalid_argument("frequency_measurements: must not exceed k_c");
        }
        if (estimator != EstimatorMethod::OMP && estimator != EstimatorMethod::IHT) {
            throw std::invalid_argument("estimator: frequency scheme requires omp or iht");
        }
    } else {
        if (estimator != EstimatorMethod::Threshold && estimator != EstimatorMethod::BGPosterior) {
            throw std::invalid_argument("estimator: impulse scheme requires threshold or bg_posterior");
        }
    }
    if (estimator == EstimatorMethod::Threshold &&
        params.gain_model != GainModel::ConstantMagnitude) {
        throw std::invalid_argument("estimator: threshold assumes the constant gain model");
    }
    if (estimator == EstimatorMethod::BGPosterior && params.gain_model != GainModel::Gaussian) {
        throw std::invalid_argument("estimator: bg_posterior assumes the gaussian gain model");
    }
    if (snr_grid.empty()) throw std::invalid_argument("snr_grid: must be nonempty");
    for (double s : snr_grid) {
        if (!(s > 0.0)) throw std::invalid_argument("snr_grid: entries must be positive");
    }
    const std::vector<double> resolved = resolved_snr_grid();
    for (std::size_t i = 1; i < resolved.size(); ++i) {
        if (resolved[i] <= resolved[i - 1]) {
            throw std::invalid_argument("snr_grid: entries must be distinct");
        }
    }
    if (trials_per_point == 0) throw std::invalid_argument("trials_per_point: must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon: must lie in (0, 1)");
    }
    if (iht_iterations == 0) throw std::invalid_argument("iht_iterations: must be >= 1");
}

std::vector<double> ExperimentConfig::resolved_snr_grid() const {
    std::vector<double> grid = snr_grid;
    if (snr_grid_relative) {
        const double snr0 = snr_zero(params);
        if (!(snr0 > 0.0)) {
            throw std::invalid_argument("snr_grid: relative grid needs SNR0 > 0 (L < k_d)");
        }
        for (double& s : grid) s *= snr0;
    }
    std::sort(grid.begin(), grid.end());
    return grid;
}

std::string ExperimentConfig::config_hash() const {
    std::ostringstream canon;
    canon.precision(17);  // doubles round-trip exactly
    canon << params.k_c << '|' << params.k_d << '|' << params.path_count << '|'
          << to_string(params.gain_model) << '|' << to_string(params.sampling_mode) << '|'
          << to_string(scheme) << '|' << frequency_measurements << '|' << to_string(estimator)
          << '|' << snr_grid_relative << '|' << trials_per_point << '|' << master_seed << '|'
          << epsilon << '|' << noiseless << '|' << effective_sparsity() << '|' << iht_iterations
          << '|' << effective_support_tol();
    std::vector<double> grid = snr_grid;  // order-insensitive identity
    std::sort(grid.begin(), grid.end());
    for (double s : grid) canon << '|' << s;
    const std::string text = canon.str();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << hash;
    return out.str();
}

EvaluationReport run_trial(const ExperimentConfig& config, std::uint32_t snr_index,
                           std::uint32_t trial_index) {
    config.validate();
    const std::vector<double> grid = config.resolved_snr_grid();
    if (snr_index >= grid.size()) throw std::invalid_argument("snr_index: out of range");
    if (trial_index >= config.trials_per_point) {
        throw std::invalid_argument("trial_index: out of range");
    }
    const double snr = grid[snr_index];

    RandomStream channel_stream(trial_seed(config, snr_index, trial_index, kStreamChannel));
    const ChannelRealization h = sample_channel(config.params, channel_stream);

    ChannelEstimate estimate;
    if (config.scheme == TrainingScheme::Impulse) {
        ImpulseObservation obs;
        if (config.noiseless) {
            obs = impulse_observe_noiseless(h, snr);
        } else {
            RandomStream noise(trial_seed(config, snr_index, trial_index, kStreamNoise));
            obs = impulse_observe(h, snr, noise);
        }
        estimate = config.estimator == EstimatorMethod::Threshold
                       ? threshold_detect(obs, config.params)
                       : bg_posterior_mean(obs, config.params);
    } else {
        RandomStream subset_stream(trial_seed(config, snr_index, trial_index, kStreamSubset));
        const FrequencySubset subset = sample_frequency_subset(
            config.params.k_c, config.frequency_measurements, subset_stream);
        FrequencyObservation obs;
        if (config.noiseless) {
            obs = frequency_observe_noiseless(h, snr, subset);
        } else {
            RandomStream noise(trial_seed(config, snr_index, trial_index, kStreamNoise));
            obs = frequency_observe(h, snr, subset, noise);
        }
        if (config.estimator == EstimatorMethod::OMP) {
            OmpOptions options;
            options.sparsity = config.effective_sparsity();
            if (config.noiseless) options.noise_floor_delta = -1.0;
            estimate = omp_recover(obs, config.params, options);
        } else {
            IhtOptions options;
            options.sparsity = config.effective_sparsity();
            options.iterations = config.iht_iterations;
            estimate = iht_recover(obs, config.params, options);
        }
    }
    return evaluate_estimate(h, estimate, config.effective_support_tol());
}

SweepResult run_sweep(const ExperimentConfig& config, unsigned workers) {
    config.validate();
    const std::vector<double> grid = config.resolved_snr_grid();
    const std::uint32_t n_points = static_cast<std::uint32_t>(grid.size());
    const std::uint32_t n_trials = config.trials_per_point;
    const std::size_t n_tasks = static_cast<std::size_t>(n_points) * n_trials;

    // Fixed indexed slots: results are independent of scheduling order.
    std::vector<EvaluationReport> reports(n_tasks);
    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(resolve_worker_count(workers),
                                        static_cast<unsigned>(n_tasks)));

    std::atomic<std::size_t> cursor{0};
    auto worker_loop = [&]() {
        for (;;) {
            const std::size_t task = cursor.fetch_add(1);
            if (task >= n_tasks) return;
            const std::uint32_t snr_index = static_cast<std::uint32_t>(task / n_trials);
            const std::uint32_t trial_index = static_cast<std::uint32_t>(task % n_trials);
            reports[task] = run_trial(config, snr_index, trial_index);
        }
    };

    if (n_workers == 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker_loop);
        for (std::thread& t : pool) t.join();
    }

    const double snr0 = snr_zero(config.params);
    SweepResult result;
    result.config_hash = config.config_hash();
    result.master_seed = config.master_seed;
    result.points.resize(n_points);
    for (std::uint32_t i = 0; i < n_points; ++i) {
        PointStats& point = result.points[i];
        point.snr = grid[i];
        point.snr_rel = snr0 > 0.0 ? grid[i] / snr0 : 0.0;
        point.n_trials = n_trials;
        double sum = 0.0;
        double sum_precision = 0.0;
        double sum_recall = 0.0;
        for (std::uint32_t t = 0; t < n_trials; ++t) {
            const EvaluationReport& r = reports[static_cast<std::size_t>(i) * n_trials + t];
            sum += r.squared_error;
            sum_precision += r.support_precision;
            sum_recall += r.support_recall;
        }
        point.mean_mse = sum / n_trials;
        point.mean_precision = sum_precision / n_trials;
        point.mean_recall = sum_recall / n_trials;
        if (n_trials > 1) {
            double ss = 0.0;
            for (std::uint32_t t = 0; t < n_trials; ++t) {
                const double d =
                    reports[static_cast<std::size_t>(i) * n_trials + t].squared_error -
                    point.mean_mse;
                ss += d * d;
            }
            point.std_err = std::sqrt(ss / (n_trials - 1)) / std::sqrt(double(n_trials));
        }
    }
    return result;
}

std::optional<double> locate_transition(const std::vector<double>& snr,
                                        const std::vector<double>& mean_mse, double level) {
    if (snr.size() != mean_mse.size() || snr.size() < 2) return std::nullopt;
    for (std::size_t i = 0; i + 1 < snr.size(); ++i) {
        if (mean_mse[i] > level && mean_mse[i + 1] <= level) {
            const double span = mean_mse[i] - mean_mse[i + 1];
            const double frac = span > 0.0 ? (mean_mse[i] - level) / span : 1.0;
            return snr[i] + frac * (snr[i + 1] - snr[i]);
        }
    }
    return std::nullopt;
}

std::optional<double> locate_transition(const std::vector<PointStats>& curve, double level) {
    std::vector<double> snr(curve.size());
    std::vector<double> mse(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        snr[i] = curve[i].snr;
        mse[i] = curve[i].mean_mse;
    }
    return locate_transition(snr, mse, level);
}

EmpiricalInfo empirical_mutual_info(const std::vector<PointStats>& curve,
                                    const ModelParams& params) {
    if (curve.empty()) throw std::invalid_argument("curve: must be nonempty");
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!(curve[i].snr > 0.0) || (i > 0 && curve[i].snr <= curve[i - 1].snr)) {
            throw std::invalid_argument("curve: snr values must be positive and increasing");
        }
    }
    const double rate = rate_distortion(params);
    const double snr0 = snr_zero(params);
    const double half_kc = 0.5 * static_cast<double>(params.k_c);

    EmpiricalInfo info;
    info.grid_start_warning = snr0 > 0.0 && curve.front().snr > 0.05 * snr0;
    info.mutual_info.label = "empirical_mutual_info";
    info.penalty.label = "empirical_penalty";

    // Leading segment [0, snr_0] extends the first measured MSE flat to zero.
    double integral = curve.front().snr * curve.front().mean_mse;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (i > 0) {
            integral += 0.5 * (curve[i].mean_mse + curve[i - 1].mean_mse) *
                        (curve[i].snr - curve[i - 1].snr);
        }
        const double mi = std::min(half_kc * integral, rate);
        info.mutual_info.snr_grid.push_back(curve[i].snr);
        info.mutual_info.values.push_back(mi);
        info.penalty.snr_grid.push_back(curve[i].snr);
        info.penalty.values.push_back(std::max(0.0, rate - mi));
    }
    return info;
}

double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman: need two equal-length series");
    }
    const auto ranks = [](const std::vector<double>& v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(n, 0.0);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += rx[i];
        mean_y += ry[i];
    }
    mean_x /= n;
    mean_y /= n;
    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (rx[i] - mean_x) * (ry[i] - mean_y);
        var_x += (rx[i] - mean_x) * (rx[i] - mean_x);
        var_y += (ry[i] - mean_y) * (ry[i] - mean_y);
    }
    if (var_x == 0.0 || var_y == 0.0) return 0.0;
    return cov / std::sqrt(var_x * var_y);
}

unsigned resolve_worker_count(unsigned requested) {
    if (requested > 0) return requested;
    unsigned cap = 0;
    if (const char* env = std::getenv("SPARSETRAIN_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') cap = static_cast<unsigned>(parsed);
    }
    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    if (cap == 0) return hardware;
    return std::min(cap, hardware);
}

const char* to_string(TrainingScheme scheme) {
    return scheme == TrainingScheme::Impulse ? "impulse" : "frequency";
}

}  // namespace sparsetrain
