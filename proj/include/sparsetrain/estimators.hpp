// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "sparsetrain/model.hpp"
#include "sparsetrain/signals.hpp"

namespace sparsetrain {

enum class EstimatorMethod { Threshold, BGPosterior, OMP, IHT };

struct ChannelEstimate {
    std::vector<double> estimate;  // length k_c; zero at indices >= k_d
    std::vector<std::uint32_t> detected_support;
    EstimatorMethod method = EstimatorMethod::Threshold;

    // Solver diagnostics (OMP / IHT).
    bool rank_deficient = false;
    double imag_residual = 0.0;  // largest |Im| discarded when realizing coefficients
    std::vector<double> residual_norms;  // OMP: ||r|| before each pick and after the last
};

struct EvaluationReport {
    double squared_error = 0.0;
    double support_precision = 0.0;
    double support_recall = 0.0;
};

struct OmpOptions {
    // 0 = unknown sparsity: iterate on the residual stopping rule alone,
    // capped at min(m, k_d) picks.
    std::uint32_t sparsity = 1;
    // Residual stopping floor is sqrt(m) * (1 + noise_floor_delta); a negative
    // delta disables the floor (noiseless operation).
    double noise_floor_delta = 0.02;
};

struct IhtOptions {
    std::uint32_t sparsity = 1;
    std::uint32_t iterations = 100;
};

// Hard-threshold detection for impulse probing of constant-magnitude gains:
// keep entries with |y_i| >= detection_threshold, assign sign(y_i)/sqrt(L).
ChannelEstimate threshold_detect(const ImpulseObservation& obs, const ModelParams& params);

// Per-entry posterior mean under the Bernoulli-Gaussian prior
// (active w.p. L/k_d with gain ~ N(0, 1/L)), observed through
// y = sqrt(snr*k_c) * h_i + z with unit-variance noise.
ChannelEstimate bg_posterior_mean(const ImpulseObservation& obs, const ModelParams& params);

// Scalar posterior mean used by bg_posterior_mean; exposed for direct checks.
// gamma = snr * k_c, sigma2 = 1/L, p = L/k_d.
double bg_scalar_posterior_mean(double y, double gamma, double sigma2, double p);

// Orthogonal matching pursuit over the m x k_d partial-harmonic dictionary.
ChannelEstimate omp_recover(const FrequencyObservation& obs, const ModelParams& params,
                            const OmpOptions& options);
ChannelEstimate omp_recover(const FrequencyObservation& obs, const ModelParams& params,
                            std::uint32_t sparsity);

// Iterative hard thresholding with step 1/||A||^2 (power-iteration estimate).
ChannelEstimate iht_recover(const FrequencyObservation& obs, const ModelParams& params,
                            const IhtOptions& options);
ChannelEstimate iht_recover(const FrequencyObservation& obs, const ModelParams& params,
                            std::uint32_t sparsity, std::uint32_t iterations);

// Squared error plus support precision/recall, detecting |estimate_i| > tol.
EvaluationReport evaluate_estimate(const ChannelRealization& h, const ChannelEstimate& est,
                                   double support_tol);

// 1/(2*sqrt(L)) for the magnitude-aware detectors, 1e-6 for solver outputs.
double default_support_tol(EstimatorMethod method, const ModelParams& params);

const char* to_string(EstimatorMethod method);

}  // namespace sparsetrain
