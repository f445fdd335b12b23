#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "angles.hpp"
#include "error.hpp"

namespace phasedist {

/// Symmetric windows use denominator N-1, periodic windows use N.
enum class WindowMode { symmetric, periodic };

inline const char* to_string(WindowMode mode) noexcept {
  return mode == WindowMode::periodic ? "periodic" : "symmetric";
}

/// Raised-cosine window w_i = (1 - alpha) - alpha * cos(2 pi i / N_w).
/// alpha = 0 is rectangular, 0.46 Hamming, 0.5 Hann.
struct WindowSpec {
  double alpha = 0.46;
  WindowMode mode = WindowMode::periodic;
  int length = 512;

  int denominator() const noexcept { return mode == WindowMode::periodic ? length : length - 1; }

  void validate() const {
    if (length < 4 || length % 2 != 0)
      throw Error(Errc::configuration,
                  "window length must be even and >= 4, got " + std::to_string(length));
    if (!(alpha >= 0.0 && alpha <= 0.5))
      throw Error(Errc::configuration, "window alpha must lie in [0, 0.5]");
  }

  static WindowSpec rectangular(int n) { return {0.0, WindowMode::periodic, n}; }
  static WindowSpec hamming(int n, WindowMode m = WindowMode::periodic) { return {0.46, m, n}; }
  static WindowSpec hann(int n, WindowMode m = WindowMode::periodic) { return {0.5, m, n}; }
};

inline std::vector<double> make_window(const WindowSpec& spec) {
  spec.validate();
  std::vector<double> w(static_cast<std::size_t>(spec.length));
  const double beta = kTwoPi / spec.denominator();
  for (int i = 0; i < spec.length; ++i)
    w[static_cast<std::size_t>(i)] = (1.0 - spec.alpha) - spec.alpha * std::cos(beta * i);
  return w;
}

}  // namespace phasedist
