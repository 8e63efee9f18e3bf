// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsetrain/estimators.hpp"
#include "sparsetrain/model.hpp"
#include "sparsetrain/theory.hpp"

namespace sparsetrain {

enum class TrainingScheme { Impulse, Frequency };

struct ExperimentConfig {
    ModelParams params;
    TrainingScheme scheme = TrainingScheme::Impulse;
    std::uint32_t frequency_measurements = 0;  // m; required for Frequency
    EstimatorMethod estimator = EstimatorMethod::Threshold;
    std::vector<double> snr_grid;
    bool snr_grid_relative = true;  // grid entries are multiples of SNR0
    std::uint32_t trials_per_point = 1;
    std::uint64_t master_seed = 0;
    double epsilon = 0.25;
    bool noiseless = false;
    std::uint32_t sparsity = 0;        // 0 = use params.path_count
    std::uint32_t iht_iterations = 100;
    double support_tol = -1.0;         // < 0 = method default

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    // Grid resolved to absolute SNR values, sorted strictly increasing.
    std::vector<double> resolved_snr_grid() const;

    std::uint32_t effective_sparsity() const {
        return sparsity == 0 ? params.path_count : sparsity;
    }
    double effective_support_tol() const {
        return support_tol >= 0.0 ? support_tol : default_support_tol(estimator, params);
    }

    // FNV-1a hash of the canonical field serialization.
    std::string config_hash() const;
};

struct PointStats {
    double snr = 0.0;
    double snr_rel = 0.0;  // snr / SNR0
    double mean_mse = 0.0;
    double std_err = 0.0;
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    std::uint32_t n_trials = 0;

    bool anomalous() const { return mean_mse > 2.0; }  // unit-norm channel scale
};

struct SweepResult {
    std::vector<PointStats> points;
    std::string config_hash;
    std::uint64_t master_seed = 0;
};

// One (snr point, trial) pipeline pass: derived seed, channel draw,
// observation, estimation, evaluation. Pure function of (config, indices).
EvaluationReport run_trial(const ExperimentConfig& config, std::uint32_t snr_index,
                           std::uint32_t trial_index);

// Full sweep; workers = 0 resolves from SPARSETRAIN_THREADS / hardware.
// Output is identical for any worker count.
SweepResult run_sweep(const ExperimentConfig& config, unsigned workers = 0);

// Linear-interpolated SNR of the first crossing of mean_mse below `level`.
std::optional<double> locate_transition(const std::vector<PointStats>& curve, double level);
std::optional<double> locate_transition(const std::vector<double>& snr,
                                        const std::vector<double>& mean_mse, double level);

struct EmpiricalInfo {
    TheoryCurve mutual_info;  // cumulative (k_c/2) * trapezoid(mean_mse), capped
    TheoryCurve penalty;      // max(0, rate_distortion - mutual_info)
    bool grid_start_warning = false;  // first grid point > 0.05 * SNR0
};

// Empirical I-MMSE integration of a measured MSE curve.
EmpiricalInfo empirical_mutual_info(const std::vector<PointStats>& curve,
                                    const ModelParams& params);

// Spearman rank correlation (average ranks on ties).
double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y);

// SPARSETRAIN_THREADS (0/unset = hardware concurrency).
unsigned resolve_worker_count(unsigned requested);

const char* to_string(TrainingScheme scheme);

}  // namespace sparsetrain
