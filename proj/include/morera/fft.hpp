#pragma once

#include <bit>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "morera/complex.hpp"
#include "morera/error.hpp"

namespace morera::detail {

/// In-place iterative radix-2 forward DFT: X_k = sum_j x_j e^{-2 pi i jk/N}.
/// Twiddles are evaluated directly rather than by recurrence so the error
/// stays at a few ulps for N up to 2^16.
inline void fft_inplace(std::span<Complex> x) {
  const std::size_t n = x.size();
  if (!std::has_single_bit(n)) throw Error(ErrorKind::Domain, "fft: length must be a power of two");
  if (n < 2) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = Complex(std::cos(a), std::sin(a));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = x[start + k];
        const Complex v = x[start + k + half] * twiddle[k * stride];
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
}

}  // namespace morera::detail
