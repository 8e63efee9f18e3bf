// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsetrain/rng.hpp"

namespace sparsetrain {

enum class GainModel { ConstantMagnitude, Gaussian };
enum class SamplingMode { Bernoulli, FixedCount };

// Channel dimensions and path statistics. k_c is the full discrete channel
// length, k_d the delay-spread prefix that may hold active paths, L the
// expected (Bernoulli) or exact (FixedCount) number of active paths.
struct ModelParams {
    std::uint32_t k_c = 0;
    std::uint32_t k_d = 0;
    std::uint32_t path_count = 0;  // L
    GainModel gain_model = GainModel::ConstantMagnitude;
    SamplingMode sampling_mode = SamplingMode::Bernoulli;

    // Activation probability L / k_d.
    double activation_probability() const {
        return static_cast<double>(path_count) / static_cast<double>(k_d);
    }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Sparse channel realization: nonzero entries only, support sorted ascending,
// all indices < k_d. Entries at indices >= support are implicitly zero over
// the full length k_c.
struct ChannelRealization {
    std::uint32_t length = 0;  // k_c
    std::vector<std::uint32_t> support;
    std::vector<double> gains;

    double norm_squared() const {
        double s = 0.0;
        for (double g : gains) s += g * g;
        return s;
    }

    std::vector<double> to_dense() const {
        std::vector<double> h(length, 0.0);
        for (std::size_t i = 0; i < support.size(); ++i) h[support[i]] = gains[i];
        return h;
    }
};

struct BaronBounds {
    std::uint64_t min_measurements = 0;
    double min_energy = 0.0;  // 2 * rate_distortion, nats-scaled
};

// Binary entropy in nats, with 0*ln(0) := 0. Domain [0, 1].
double binary_entropy(double p);

// Critical training SNR: 2 * k_d * H_b(L / k_d) / k_c.
double snr_zero(const ModelParams& params);

// Channel description complexity (leading term): k_d * H_b(L / k_d), nats.
double rate_distortion(const ModelParams& params);

// Measurement / energy lower bounds at the given per-measurement snr:
// min_measurements = ceil(R / (0.5 * ln(1 + snr))), min_energy = 2 * R.
BaronBounds baron_bounds(const ModelParams& params, double snr);

// Amplitude threshold separating active paths from noise at the critical
// energy: sqrt(k_c * snr_zero / L).
double detection_threshold(const ModelParams& params);

// Draw a channel: Bernoulli activation with probability L/k_d, or exactly L
// support positions without replacement; gains +-1/sqrt(L) or N(0, 1/L).
ChannelRealization sample_channel(const ModelParams& params, const Seed& seed);
ChannelRealization sample_channel(const ModelParams& params, RandomStream& stream);

const char* to_string(GainModel model);
const char* to_string(SamplingMode mode);

}  // namespace sparsetrain
