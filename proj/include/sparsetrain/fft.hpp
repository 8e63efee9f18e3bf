// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace sparsetrain {

using cdouble = std::complex<double>;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT. Length must be a power of two.
// inverse = true applies the conjugate transform and divides by n.
void fft_radix2(std::vector<cdouble>& data, bool inverse);

// Cyclic convolution of equal-length vectors. Power-of-two lengths go through
// the FFT; other lengths use the direct O(n^2) sum.
std::vector<cdouble> circular_convolve(const std::vector<cdouble>& a,
                                       const std::vector<cdouble>& b);
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b);

}  // namespace sparsetrain
