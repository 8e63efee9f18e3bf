// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sparsetrain {

std::vector<std::uint32_t> RandomStream::sample_without_replacement(std::uint32_t n,
                                                                    std::uint32_t m) {
    if (m > n) throw std::domain_error("sample_without_replacement: m exceeds population");
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint32_t i = 0; i < m; ++i) {
        const std::uint64_t j = i + next_below(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace sparsetrain
