#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "angles.hpp"

namespace phasedist {

using Complex = std::complex<double>;

namespace detail {

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform. sign = -1 forward, +1 inverse (unscaled).
inline void fft_radix2(std::span<Complex> a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // twiddles from the exact angle rather than by repeated multiplication
    std::vector<Complex> tw(half);
    for (std::size_t m = 0; m < half; ++m) {
      const double ang = sign * kTwoPi * static_cast<double>(m) / static_cast<double>(len);
      tw[m] = Complex(std::cos(ang), std::sin(ang));
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t m = 0; m < half; ++m) {
        const Complex u = a[i + m];
        const Complex v = a[i + m + half] * tw[m];
        a[i + m] = u + v;
        a[i + m + half] = u - v;
      }
    }
  }
}

inline std::vector<Complex> dft_direct(std::span<const Complex> x, int sign) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const double ang = sign * kTwoPi * static_cast<double>((k * i) % n) / static_cast<double>(n);
      acc += x[i] * Complex(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace detail

/// Forward DFT X_k = sum_i x_i e^{-j 2 pi k i / N}.
inline std::vector<Complex> dft(std::span<const Complex> x) {
  if (detail::is_power_of_two(x.size())) {
    std::vector<Complex> a(x.begin(), x.end());
    detail::fft_radix2(a, -1);
    return a;
  }
  return detail::dft_direct(x, -1);
}

inline std::vector<Complex> dft(std::span<const double> x) {
  std::vector<Complex> c(x.begin(), x.end());
  return dft(std::span<const Complex>(c));
}

/// Inverse DFT with 1/N scaling.
inline std::vector<Complex> idft(std::span<const Complex> X) {
  std::vector<Complex> a;
  if (detail::is_power_of_two(X.size())) {
    a.assign(X.begin(), X.end());
    detail::fft_radix2(a, +1);
  } else {
    a = detail::dft_direct(X, +1);
  }
  const double scale = 1.0 / static_cast<double>(X.size());
  for (auto& v : a) v *= scale;
  return a;
}

}  // namespace phasedist
