#pragma once

// Closed-form phase of the STFT coefficient produced by a windowed tone
// x_i = cos(omega_t i + theta), its rectangular-window decomposition, the
// induced phase density and its intrinsic peak locations.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "window.hpp"

namespace phasedist {

/// Tone frequency / bin frequency / window tuple that drives every
/// closed-form evaluation.
struct AnalyticContext {
  double omega_t = 0.0;
  double omega_k = 0.0;
  int n = 512;
  double alpha = 0.0;
  WindowMode mode = WindowMode::periodic;

  static AnalyticContext make(double omega_t, double omega_k, int n, double alpha = 0.0,
                              WindowMode mode = WindowMode::periodic) {
    AnalyticContext ctx{omega_t, omega_k, n, alpha, mode};
    ctx.validate();
    return ctx;
  }

  /// Context for DFT bin k (omega_k = 2 pi k / N).
  static AnalyticContext for_bin(double omega_t, int k, int n, double alpha = 0.0,
                                 WindowMode mode = WindowMode::periodic) {
    if (k < 1 || k > n / 2 - 1)
      throw Error(Errc::out_of_range, "bin " + std::to_string(k) + " outside 1..N/2-1");
    return make(omega_t, kTwoPi * k / n, n, alpha, mode);
  }

  void validate() const {
    WindowSpec{alpha, mode, n}.validate();
    if (!(omega_t >= 0.0 && omega_t <= kPi))
      throw Error(Errc::configuration, "tone frequency must lie in [0, pi]");
    if (!(omega_k > 0.0 && omega_k < kPi))
      throw Error(Errc::configuration, "bin frequency must lie in (0, pi)");
  }

  int window_denominator() const noexcept { return mode == WindowMode::periodic ? n : n - 1; }
  double delta_plus() const noexcept { return omega_t + omega_k; }
  double delta_minus() const noexcept { return omega_t - omega_k; }
  double beta() const noexcept { return kTwoPi / window_denominator(); }
};

/// Nearest DFT bin to an arbitrary frequency, as a bin index.
inline int nearest_bin(double omega, int n) {
  return static_cast<int>(std::lround(omega * n / kTwoPi));
}

/// s(gamma, N) = sin(N gamma / 2) / sin(gamma / 2), continued through the
/// removable singularities at multiples of 2 pi.
inline double dirichlet_s(double gamma, int n) noexcept {
  const double half = 0.5 * gamma;
  const double den = std::sin(half);
  if (std::abs(den) < 1e-12) return n * std::cos(n * half) / std::cos(half);
  return std::sin(n * half) / den;
}

struct TrigSums {
  double f = 0.0;  ///< sum_i sin(gamma i + theta)
  double g = 0.0;  ///< sum_i cos(gamma i + theta)
};

inline TrigSums trig_sums_fg(double gamma, double theta, int n) noexcept {
  const double s = dirichlet_s(gamma, n);
  const double arg = 0.5 * (n - 1) * gamma + theta;
  return {s * std::sin(arg), s * std::cos(arg)};
}

struct ReIm {
  double re = 0.0;
  double im = 0.0;
};

/// Real and imaginary parts of X_k for the windowed tone, as the twelve
/// closed-form trigonometric sums.
inline ReIm coefficient_re_im(const AnalyticContext& ctx, double theta) noexcept {
  const int n = ctx.n;
  const double dp = ctx.delta_plus();
  const double dm = ctx.delta_minus();
  const double b = ctx.beta();
  const auto p0 = trig_sums_fg(dp, theta, n);
  const auto m0 = trig_sums_fg(dm, theta, n);
  ReIm out{0.5 * (1.0 - ctx.alpha) * (p0.g + m0.g), 0.5 * (1.0 - ctx.alpha) * (-p0.f + m0.f)};
  if (ctx.alpha != 0.0) {
    const auto pl = trig_sums_fg(dp - b, theta, n);
    const auto ph = trig_sums_fg(dp + b, theta, n);
    const auto ml = trig_sums_fg(dm - b, theta, n);
    const auto mh = trig_sums_fg(dm + b, theta, n);
    out.re -= 0.25 * ctx.alpha * (pl.g + ph.g + ml.g + mh.g);
    out.im -= 0.25 * ctx.alpha * (-pl.f - ph.f + ml.f + mh.f);
  }
  return out;
}

/// Both parts below 1e-12 * N: phase is reported as 0 and flagged.
inline bool is_near_zero(double re, double im, int n) noexcept {
  const double eps = 1e-12 * n;
  return std::abs(re) < eps && std::abs(im) < eps;
}

struct PhaseSample {
  double phase = 0.0;
  bool near_zero = false;
};

inline PhaseSample tone_to_stft_phase_checked(const AnalyticContext& ctx, double theta) noexcept {
  const auto c = coefficient_re_im(ctx, theta);
  if (is_near_zero(c.re, c.im, ctx.n)) return {0.0, true};
  return {phase_of(c.re, c.im), false};
}

/// phi_k = F(theta), in [-pi, pi).
inline double tone_to_stft_phase(const AnalyticContext& ctx, double theta) noexcept {
  return tone_to_stft_phase_checked(ctx, theta).phase;
}

/// Rectangular-window split Re = c_re cos(theta + zeta_re),
/// Im = c_im cos(theta + zeta_im).
struct RectDecomposition {
  double a_re = 0.0, b_re = 0.0, a_im = 0.0, b_im = 0.0;
  double c_re = 0.0, c_im = 0.0;
  double zeta_re = 0.0, zeta_im = 0.0;

  double ratio() const { return c_re / c_im; }
  /// P_2pi(zeta_re - zeta_im)
  double angle_difference() const { return principal_angle_2pi(zeta_re - zeta_im); }
};

inline RectDecomposition rect_decompose(double omega_t, double omega_k, int n) noexcept {
  const auto p = trig_sums_fg(omega_t + omega_k, 0.0, n);
  const auto m = trig_sums_fg(omega_t - omega_k, 0.0, n);
  RectDecomposition d;
  d.a_re = 0.5 * (p.g + m.g);
  d.b_re = 0.5 * (-p.f - m.f);
  d.a_im = 0.5 * (-p.f + m.f);
  d.b_im = 0.5 * (-p.g + m.g);
  d.c_re = std::hypot(d.a_re, d.b_re);
  d.c_im = std::hypot(d.a_im, d.b_im);
  // a cos(theta) + b sin(theta) = c cos(theta + zeta) with zeta = atan2(-b, a)
  d.zeta_re = std::atan2(-d.b_re, d.a_re);
  d.zeta_im = std::atan2(-d.b_im, d.a_im);
  return d;
}

inline double phase_via_decomposition(const RectDecomposition& dec, double theta) {
  if (dec.c_im == 0.0)
    throw Error(Errc::degenerate_decomposition, "c_im = 0, ratio c_re/c_im undefined");
  return phase_of(dec.ratio() * std::cos(theta + dec.zeta_re), std::cos(theta + dec.zeta_im));
}

struct PdfPoint {
  double theta = 0.0;    ///< tone phase on the uniform grid
  double phi = 0.0;      ///< F(theta)
  double density = 0.0;  ///< f_phi(F(theta))
};

/// Phase density for the rectangular window, evaluated parametrically on a
/// uniform theta grid over [-pi, pi) instead of inverting F.
inline std::vector<PdfPoint> phase_pdf_curve(const AnalyticContext& ctx, int resolution) {
  if (ctx.alpha != 0.0)
    throw Error(Errc::unsupported, "closed-form phase density exists only for the rectangular window");
  if (ctx.omega_t == ctx.omega_k)
    throw Error(Errc::degenerate_decomposition, "tone on the bin: phase map is the identity");
  if (resolution < 2) throw Error(Errc::configuration, "resolution must be >= 2");
  const double sp = dirichlet_s(ctx.delta_plus(), ctx.n);
  const double sm = dirichlet_s(ctx.delta_minus(), ctx.n);
  const double den = kTwoPi * (sm * sm - sp * sp);
  if (std::abs(den) <= 1e-12 * kTwoPi * (sm * sm + sp * sp))
    throw Error(Errc::degenerate_decomposition, "s^2(delta+) = s^2(delta-): density denominator vanishes");
  std::vector<PdfPoint> curve(static_cast<std::size_t>(resolution));
  for (int j = 0; j < resolution; ++j) {
    const double theta = -kPi + kTwoPi * j / resolution;
    const double num = sp * sp + 2.0 * sp * sm * std::cos((ctx.n - 1) * ctx.omega_t + 2.0 * theta) + sm * sm;
    curve[static_cast<std::size_t>(j)] = {theta, tone_to_stft_phase(ctx, theta), std::abs(num / den)};
  }
  return curve;
}

/// Integrates a parametric density curve over M uniform phase cells on
/// [-pi, pi), treating the density as piecewise linear in phi between
/// consecutive curve points. F is a circle map of degree +-1 for the
/// rectangular window, so the unwrapped phi sequence spans one turn.
inline std::vector<double> integrate_pdf_cells(const std::vector<PdfPoint>& curve, int cells) {
  std::vector<double> mass(static_cast<std::size_t>(cells), 0.0);
  if (curve.size() < 2) return mass;
  const double width = kTwoPi / cells;
  auto cell_of = [&](double x) {
    auto c = static_cast<long>(std::floor((x + kPi) / width)) % cells;
    if (c < 0) c += cells;
    return static_cast<std::size_t>(c);
  };
  const std::size_t count = curve.size();
  for (std::size_t j = 0; j < count; ++j) {
    const auto& p = curve[j];
    const auto& q = curve[(j + 1) % count];
    double x0 = p.phi;
    double x1 = p.phi + circular_difference(q.phi, p.phi);
    double d0 = p.density, d1 = q.density;
    if (x1 < x0) {
      std::swap(x0, x1);
      std::swap(d0, d1);
    }
    const double span = x1 - x0;
    if (span <= 0.0) continue;
    auto density_at = [&](double x) { return d0 + (d1 - d0) * (x - x0) / span; };
    // step across cell edges by index so rounding cannot stall the walk
    double a = x0;
    auto edge = static_cast<long>(std::floor((x0 + kPi) / width)) + 1;
    while (a < x1) {
      const double next_edge = -kPi + width * static_cast<double>(edge++);
      if (next_edge <= a) continue;
      const double b = std::min(x1, next_edge);
      mass[cell_of(0.5 * (a + b))] += 0.5 * (b - a) * (density_at(a) + density_at(b));
      a = b;
    }
  }
  return mass;
}

enum class ToneSide { tone_below, tone_above };

/// Intrinsic density peaks of phi_k for tones below or above the bin;
/// independent of the tone frequency. Sorted ascending.
inline std::array<double, 2> pdf_peak_locations(double omega_k, int n, ToneSide side) {
  const double k = omega_k * n / kTwoPi;
  if (std::abs(k - std::round(k)) > 1e-9 || std::round(k) < 1 || std::round(k) > n / 2 - 1)
    throw Error(Errc::out_of_range, "omega_k is not a bin frequency 2 pi k / N with k in 1..N/2-1");
  const double base = side == ToneSide::tone_below ? omega_k : omega_k + kPi;
  std::array<double, 2> peaks{principal_angle_pi(0.5 * (base + kPi)), principal_angle_pi(0.5 * (base - kPi))};
  std::sort(peaks.begin(), peaks.end());
  return peaks;
}

}  // namespace phasedist
