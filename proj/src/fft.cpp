// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsetrain {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void fft_radix2(std::vector<cdouble>& data, bool inverse) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) throw std::domain_error("fft_radix2: length must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const cdouble w_len(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble u = data[i + k];
                const cdouble v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= w_len;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (cdouble& x : data) x *= scale;
    }
}

std::vector<cdouble> circular_convolve(const std::vector<cdouble>& a,
                                       const std::vector<cdouble>& b) {
    if (a.size() != b.size()) throw std::domain_error("circular_convolve: length mismatch");
    const std::size_t n = a.size();
    if (n == 0) return {};

    if (is_power_of_two(n) && n >= 8) {
        std::vector<cdouble> fa = a;
        std::vector<cdouble> fb = b;
        fft_radix2(fa, false);
        fft_radix2(fb, false);
        for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
        fft_radix2(fa, true);
        return fa;
    }

    std::vector<cdouble> out(n, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k] == cdouble(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            out[(k + j) % n] += a[k] * b[j];
        }
    }
    return out;
}

std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    std::vector<cdouble> ca(a.begin(), a.end());
    std::vector<cdouble> cb(b.begin(), b.end());
    const std::vector<cdouble> cc = circular_convolve(ca, cb);
    std::vector<double> out(cc.size());
    for (std::size_t i = 0; i < cc.size(); ++i) out[i] = cc[i].real();
    return out;
}

}  // namespace sparsetrain
