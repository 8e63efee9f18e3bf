// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsetrain/model.hpp"

namespace sparsetrain {

struct TheoryCurve {
    std::vector<double> snr_grid;  // strictly increasing, positive
    std::vector<double> values;
    std::string label;

    void validate() const;
};

struct PenaltyBound {
    double penalty = 0.0;    // nats
    double rdf_after = 0.0;  // nats
};

struct RipCounts {
    std::uint64_t harmonic_m = 0;
    std::uint64_t gaussian_m = 0;
};

struct FletcherComparison {
    double fletcher_measurements = 0.0;
    double fletcher_energy = 0.0;
    double our_measurements = 0.0;  // measurement_constant * L * ln(k_c / L)
    double our_energy = 0.0;        // 2 * L * ln(k_c / L)
    double energy_ratio = 0.0;      // fletcher_energy / our_energy
};

// Step MMSE curve for constant-magnitude gains: 1 below (1-eps)*SNR0, 0 above
// (1+eps)*SNR0, linear in the transition band.
double mmse_hc_step(double snr, const ModelParams& params, double epsilon);

// Gaussian-gain MMSE curve: integral of s^2 phi(s) over [-a, a] with
// a = sqrt(SNR0 / snr); closed form erf(a/sqrt(2)) - a*sqrt(2/pi)*exp(-a^2/2).
double mmse_hg_theory(double snr, const ModelParams& params);

// Training information via the I-MMSE relation: (k_c / 2) * integral of the
// model's MMSE curve over [0, snr], capped at rate_distortion. Numeric
// integration to relative error <= 1e-4 (piecewise-exact for the step curve).
double training_mutual_info(double snr, const ModelParams& params, GainModel model,
                            double epsilon = 0.25);

// Penalty term and rate distortion after training; both equal
// max(0, rate_distortion - training_mutual_info) at this level of
// approximation.
PenaltyBound penalty_bound(double snr, const ModelParams& params, GainModel model,
                           double epsilon = 0.25);

// Measurement counts for the restricted isometry property; the unspecified
// constants are explicit inputs. harmonic_m uses a max(1, ln L) guard so that
// L <= e does not collapse the count to zero.
RipCounts rip_counts(const ModelParams& params, double c_harmonic, double c_gaussian);

// Training energy / measurement comparison against exact pattern recovery.
FletcherComparison fletcher_compare(const ModelParams& params, double snr,
                                    double measurement_constant = 1.0);

}  // namespace sparsetrain
