#pragma once

// Independent oracles shared by the test suites. Nothing here calls the
// library's transform or closed-form paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace testsupport {

inline constexpr double pi = std::numbers::pi;

/// O(N^2) DFT by direct summation in long double.
inline std::vector<std::complex<double>> direct_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const long double ang = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>((k * i) % n) / n;
      re += x[i] * std::cos(ang);
      im += x[i] * std::sin(ang);
    }
    out[k] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

/// Window by its defining formula.
inline std::vector<double> window_formula(double alpha, int n, int denominator) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = (1.0 - alpha) - alpha * std::cos(2.0 * pi * i / denominator);
  return w;
}

/// X_k of the windowed tone cos(omega_t i + theta) by direct summation.
inline std::complex<double> tone_coefficient(double omega_t, double theta, int k, int n, double alpha, int denominator) {
  const auto w = window_formula(alpha, n, denominator);
  long double re = 0.0L, im = 0.0L;
  for (int i = 0; i < n; ++i) {
    const long double x = w[static_cast<std::size_t>(i)] * std::cos(static_cast<long double>(omega_t) * i + theta);
    const long double ang = -2.0L * std::numbers::pi_v<long double> * ((static_cast<long long>(k) * i) % n) / n;
    re += x * std::cos(ang);
    im += x * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

inline double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

/// max_i |a_i - b_i| / max(max_i |b_i|, tiny)
inline double relative_error(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst / std::max(max_abs(b), 1e-300);
}

/// Plain 1-D earth mover's distance to uniform, normalised by the distance
/// of a central-cell delta; written from the definition in doubles.
inline double emd_ubar(const std::vector<double>& p) {
  const std::size_t m = p.size();
  auto emd = [&](const std::vector<double>& q) {
    double cum = 0.0, s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      cum += q[k] - 1.0 / static_cast<double>(m);
      s += std::abs(cum);
    }
    return s;
  };
  std::vector<double> delta(m, 0.0);
  delta[m / 2] = 1.0;
  return emd(p) / emd(delta);
}

}  // namespace testsupport
