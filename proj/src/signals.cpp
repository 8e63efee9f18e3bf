// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/signals.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsetrain {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void FrequencySubset::validate() const {
    if (k_c == 0) throw std::invalid_argument("subset.k_c: must be a positive integer");
    if (indices.empty()) throw std::invalid_argument("subset.indices: must be nonempty");
    if (indices.size() > k_c) throw std::invalid_argument("subset.indices: more than k_c entries");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= k_c) throw std::invalid_argument("subset.indices: index out of range");
        if (i > 0 && indices[i] <= indices[i - 1]) {
            throw std::invalid_argument("subset.indices: must be strictly increasing");
        }
    }
}

cdouble harmonic_phase(std::uint32_t k_c, std::uint64_t harmonic, std::uint64_t position) {
    const std::uint64_t reduced = (harmonic % k_c) * (position % k_c) % k_c;
    const double angle = -kTwoPi * static_cast<double>(reduced) / static_cast<double>(k_c);
    return cdouble(std::cos(angle), std::sin(angle));
}

std::vector<double> impulse_signal(std::uint32_t k_c) {
    if (k_c == 0) throw std::domain_error("impulse_signal: k_c must be positive");
    std::vector<double> x(k_c, 0.0);
    x[0] = std::sqrt(static_cast<double>(k_c));
    return x;
}

ImpulseObservation impulse_observe(const ChannelRealization& h, double snr, const Seed& seed) {
    RandomStream stream(seed);
    return impulse_observe(h, snr, stream);
}

ImpulseObservation impulse_observe(const ChannelRealization& h, double snr, RandomStream& stream) {
    if (!(snr > 0.0)) throw std::domain_error("impulse_observe: snr must be positive");
    ImpulseObservation obs;
    obs.snr = snr;
    obs.samples.resize(h.length);
    for (double& s : obs.samples) s = stream.next_gaussian();
    const double amplitude = std::sqrt(snr * static_cast<double>(h.length));
    for (std::size_t i = 0; i < h.support.size(); ++i) {
        obs.samples[h.support[i]] += amplitude * h.gains[i];
    }
    return obs;
}

ImpulseObservation impulse_observe_noiseless(const ChannelRealization& h, double snr) {
    if (!(snr > 0.0)) throw std::domain_error("impulse_observe: snr must be positive");
    ImpulseObservation obs;
    obs.snr = snr;
    obs.samples.assign(h.length, 0.0);
    const double amplitude = std::sqrt(snr * static_cast<double>(h.length));
    for (std::size_t i = 0; i < h.support.size(); ++i) {
        obs.samples[h.support[i]] = amplitude * h.gains[i];
    }
    return obs;
}

FrequencySubset sample_frequency_subset(std::uint32_t k_c, std::uint32_t m, const Seed& seed) {
    RandomStream stream(seed);
    return sample_frequency_subset(k_c, m, stream);
}

FrequencySubset sample_frequency_subset(std::uint32_t k_c, std::uint32_t m,
                                        RandomStream& stream) {
    if (m == 0 || m > k_c) {
        throw std::domain_error("sample_frequency_subset: m must lie in [1, k_c]");
    }
    FrequencySubset subset;
    subset.k_c = k_c;
    subset.indices = stream.sample_without_replacement(k_c, m);
    return subset;
}

std::vector<cdouble> frequency_signal(const FrequencySubset& subset) {
    subset.validate();
    const std::uint32_t k_c = subset.k_c;
    const double scale = std::sqrt(static_cast<double>(k_c) / subset.size()) /
                         std::sqrt(static_cast<double>(k_c));
    std::vector<cdouble> x(k_c, cdouble(0.0, 0.0));
    for (std::uint32_t k = 0; k < k_c; ++k) {
        cdouble acc(0.0, 0.0);
        for (std::uint32_t i : subset.indices) {
            // Forward harmonic: exp(+2*pi*j*i*k / k_c) = conj of harmonic_phase.
            acc += std::conj(harmonic_phase(k_c, i, k));
        }
        x[k] = scale * acc;
    }
    return x;
}

std::vector<cdouble> dft_eigenvalues(const ChannelRealization& h, const FrequencySubset& subset) {
    subset.validate();
    if (h.length != subset.k_c) throw std::domain_error("dft_eigenvalues: length mismatch");
    std::vector<cdouble> lambda(subset.size(), cdouble(0.0, 0.0));
    for (std::size_t j = 0; j < subset.indices.size(); ++j) {
        const std::uint32_t i = subset.indices[j];
        cdouble acc(0.0, 0.0);
        for (std::size_t t = 0; t < h.support.size(); ++t) {
            acc += h.gains[t] * harmonic_phase(h.length, i, h.support[t]);
        }
        lambda[j] = acc;
    }
    return lambda;
}

FrequencyObservation frequency_observe(const ChannelRealization& h, double snr,
                                       const FrequencySubset& subset, const Seed& seed) {
    RandomStream stream(seed);
    return frequency_observe(h, snr, subset, stream);
}

FrequencyObservation frequency_observe(const ChannelRealization& h, double snr,
                                       const FrequencySubset& subset, RandomStream& stream) {
    FrequencyObservation obs = frequency_observe_noiseless(h, snr, subset);
    // Unit total variance per complex measurement, split evenly between parts.
    const double part_sigma = std::sqrt(0.5);
    for (cdouble& y : obs.measurements) {
        y += cdouble(part_sigma * stream.next_gaussian(), part_sigma * stream.next_gaussian());
    }
    return obs;
}

FrequencyObservation frequency_observe_noiseless(const ChannelRealization& h, double snr,
                                                 const FrequencySubset& subset) {
    if (!(snr > 0.0)) throw std::domain_error("frequency_observe: snr must be positive");
    FrequencyObservation obs;
    obs.subset = subset;
    obs.snr = snr;
    obs.measurements = dft_eigenvalues(h, subset);
    const double amplitude =
        std::sqrt(snr * static_cast<double>(subset.k_c) / static_cast<double>(subset.size()));
    for (cdouble& y : obs.measurements) y *= amplitude;
    return obs;
}

double snr_f(std::uint32_t k_c, std::uint32_t m, double snr) {
    if (m == 0 || m > k_c) throw std::domain_error("snr_f: m must lie in [1, k_c]");
    if (!(snr > 0.0)) throw std::domain_error("snr_f: snr must be positive");
    return static_cast<double>(k_c) / static_cast<double>(m) * snr;
}

}  // namespace sparsetrain
