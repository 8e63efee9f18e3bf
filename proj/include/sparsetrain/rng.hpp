// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sparsetrain {

// Reproducibility contract: every random quantity in the library is drawn
// through RandomStream, seeded via derive_seed(master, path). The mixing
// function and all draw algorithms below are fully specified (no
// implementation-defined std::*_distribution), so identical (master, path)
// inputs reproduce identical streams on any platform.

struct Seed {
    std::uint64_t master = 0;
    std::vector<std::uint64_t> path;
};

// SplitMix64 finalizer (Steele, Lea, Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Chained mix of (master, label...); pure function of its inputs.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::span<const std::uint64_t> path) noexcept {
    std::uint64_t state = splitmix64(master);
    for (std::uint64_t label : path) {
        state = splitmix64(state ^ splitmix64(label));
    }
    return state;
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) noexcept {
    return derive_seed(master, std::span<const std::uint64_t>(path.begin(), path.size()));
}

inline std::uint64_t derive_seed(const Seed& seed) noexcept {
    return derive_seed(seed.master, std::span<const std::uint64_t>(seed.path));
}

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    explicit RandomStream(const Seed& seed) : engine_(derive_seed(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (-n) % n;  // 2^64 mod n
        std::uint64_t r;
        do {
            r = engine_();
        } while (r < threshold);
        return r % n;
    }

    bool next_bit() { return (engine_() >> 63) != 0; }

    // Standard normal via Box-Muller; the second deviate is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;        // [0, 1)
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // m distinct values from [0, n), sorted ascending. Partial Fisher-Yates.
    std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t m);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace sparsetrain
