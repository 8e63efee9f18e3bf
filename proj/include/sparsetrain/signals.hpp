// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sparsetrain/fft.hpp"
#include "sparsetrain/model.hpp"
#include "sparsetrain/rng.hpp"

namespace sparsetrain {

// m distinct harmonic indices in [0, k_c), sorted ascending. Index i selects
// the harmonic with per-entry phase exp(2*pi*j*i*k / k_c).
struct FrequencySubset {
    std::uint32_t k_c = 0;
    std::vector<std::uint32_t> indices;

    std::uint32_t size() const { return static_cast<std::uint32_t>(indices.size()); }
    void validate() const;
};

// Full-length noisy impulse response: samples = sqrt(snr * k_c) * h + z,
// z real white Gaussian with unit variance per sample.
struct ImpulseObservation {
    std::vector<double> samples;
    double snr = 0.0;
};

// Compressed measurements: one complex value per selected harmonic,
// measurement_j = sqrt(snr * k_c / m) * lambda_{i_j} + noise (unit total
// variance per complex measurement).
struct FrequencyObservation {
    FrequencySubset subset;
    std::vector<cdouble> measurements;
    double snr = 0.0;
};

// Time-domain impulse training signal: sqrt(k_c) at index 0, zero elsewhere.
std::vector<double> impulse_signal(std::uint32_t k_c);

ImpulseObservation impulse_observe(const ChannelRealization& h, double snr, const Seed& seed);
ImpulseObservation impulse_observe(const ChannelRealization& h, double snr, RandomStream& stream);
// Noise scaled to zero; for exactness checks.
ImpulseObservation impulse_observe_noiseless(const ChannelRealization& h, double snr);

FrequencySubset sample_frequency_subset(std::uint32_t k_c, std::uint32_t m, const Seed& seed);
FrequencySubset sample_frequency_subset(std::uint32_t k_c, std::uint32_t m, RandomStream& stream);

// Time-domain training signal sqrt(k_c/m) * sum of the selected harmonics;
// squared norm equals k_c for every subset size.
std::vector<cdouble> frequency_signal(const FrequencySubset& subset);

// Channel frequency response at the selected harmonics:
// lambda_i = sum_k h_k * exp(-2*pi*j*i*k / k_c), so h (*) f_i = lambda_i f_i.
std::vector<cdouble> dft_eigenvalues(const ChannelRealization& h, const FrequencySubset& subset);

FrequencyObservation frequency_observe(const ChannelRealization& h, double snr,
                                       const FrequencySubset& subset, const Seed& seed);
FrequencyObservation frequency_observe(const ChannelRealization& h, double snr,
                                       const FrequencySubset& subset, RandomStream& stream);
FrequencyObservation frequency_observe_noiseless(const ChannelRealization& h, double snr,
                                                 const FrequencySubset& subset);

// Per-measurement SNR after concentrating the training energy on m harmonics.
double snr_f(std::uint32_t k_c, std::uint32_t m, double snr);

// exp(-2*pi*j * (i * k mod k_c) / k_c); exact integer phase reduction.
cdouble harmonic_phase(std::uint32_t k_c, std::uint64_t harmonic, std::uint64_t position);

}  // namespace sparsetrain
