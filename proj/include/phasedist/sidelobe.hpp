#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "window.hpp"

namespace phasedist {

inline constexpr int kSidelobeOversampling = 16;

/// |W(omega)| by direct DTFT summation.
inline double dtft_magnitude(const std::vector<double>& w, double omega) {
  std::complex<double> acc{};
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double a = -omega * static_cast<double>(i);
    acc += w[i] * std::complex<double>(std::cos(a), std::sin(a));
  }
  return std::abs(acc);
}

/// 20 log10 of the mean |W| over a one-bin-wide band (2 pi / N) centred on
/// `offset`, relative to |W(0)|. The band is sampled at 16 midpoints.
inline double sidelobe_suppression_db(const WindowSpec& spec, double offset) {
  if (!(offset > 0.0 && offset <= kPi)) throw Error(Errc::configuration, "offset must lie in (0, pi]");
  const auto w = make_window(spec);
  const double band = kTwoPi / spec.length;
  double sum = 0.0;
  for (int j = 0; j < kSidelobeOversampling; ++j) {
    const double omega = offset - 0.5 * band + (j + 0.5) * band / kSidelobeOversampling;
    sum += dtft_magnitude(w, omega);
  }
  const double mean = sum / kSidelobeOversampling;
  return 20.0 * std::log10(mean / dtft_magnitude(w, 0.0));
}

}  // namespace phasedist
