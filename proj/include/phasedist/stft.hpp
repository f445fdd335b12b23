#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "fft.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "window.hpp"

namespace phasedist {

struct StftConfig {
  WindowSpec window;
  int stride = 0;  ///< 0 selects N/2

  int hop() const noexcept { return stride > 0 ? stride : window.length / 2; }

  void validate() const {
    window.validate();
    if (stride < 0 || hop() > window.length)
      throw Error(Errc::configuration, "stride must satisfy 1 <= stride <= N");
  }
};

/// Complex STFT coefficients, frames x N bins, row-major.
class StftFrameGrid {
 public:
  StftFrameGrid() = default;
  StftFrameGrid(StftConfig config, std::size_t frames)
      : config_(config),
        frames_(frames),
        data_(frames * static_cast<std::size_t>(config.window.length)) {}

  const StftConfig& config() const noexcept { return config_; }
  std::size_t frames() const noexcept { return frames_; }
  std::size_t bins() const noexcept { return static_cast<std::size_t>(config_.window.length); }
  bool empty() const noexcept { return frames_ == 0; }

  Complex& at(std::size_t frame, std::size_t bin) { return data_[frame * bins() + bin]; }
  const Complex& at(std::size_t frame, std::size_t bin) const { return data_[frame * bins() + bin]; }

  std::span<Complex> frame(std::size_t t) { return {data_.data() + t * bins(), bins()}; }
  std::span<const Complex> frame(std::size_t t) const { return {data_.data() + t * bins(), bins()}; }

  double magnitude(std::size_t t, std::size_t k) const { return std::abs(at(t, k)); }
  double phase(std::size_t t, std::size_t k) const {
    const Complex& c = at(t, k);
    return phase_of(c.real(), c.imag());
  }

  /// Bins carrying unique phase information: 1 .. N/2 - 1.
  std::size_t first_unique_bin() const noexcept { return 1; }
  std::size_t last_unique_bin() const noexcept { return bins() / 2 - 1; }

  const std::vector<Complex>& data() const noexcept { return data_; }

  /// Appends the frames of `other`; configurations must match in window length.
  void append(const StftFrameGrid& other) {
    if (other.bins() != bins()) throw Error(Errc::configuration, "cannot append grids of different N");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    frames_ += other.frames_;
  }

  friend bool operator==(const StftFrameGrid& a, const StftFrameGrid& b) {
    return a.frames_ == b.frames_ && a.data_ == b.data_;
  }

 private:
  StftConfig config_{};
  std::size_t frames_ = 0;
  std::vector<Complex> data_;
};

namespace detail {

inline void transform_frame(std::span<const double> samples, std::span<const double> window,
                            std::span<Complex> out) {
  std::vector<Complex> buf(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) buf[i] = Complex(window[i] * samples[i], 0.0);
  auto X = dft(std::span<const Complex>(buf));
  std::copy(X.begin(), X.end(), out.begin());
}

}  // namespace detail

/// X_{k,t} = sum_i w_i x_{t Ns + i} e^{-j 2 pi k i / N}. Trailing partial
/// frames are dropped. Frames are computed independently, so the result does
/// not depend on `threads`.
inline StftFrameGrid stft(std::span<const double> signal, const StftConfig& config,
                          unsigned threads = 0) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.window.length);
  const auto hop = static_cast<std::size_t>(config.hop());
  if (signal.size() < n)
    throw Error(Errc::empty_grid, "signal has " + std::to_string(signal.size()) +
                                      " samples, fewer than one frame of " + std::to_string(n));
  const std::size_t frames = (signal.size() - n) / hop + 1;
  const auto window = make_window(config.window);
  StftFrameGrid grid(config, frames);
  parallel_for(
      frames,
      [&](std::size_t t) { detail::transform_frame(signal.subspan(t * hop, n), window, grid.frame(t)); },
      threads);
  return grid;
}

/// One grid row per independent frame (e.g. a synthetic corpus). Each frame
/// must hold exactly N samples.
inline StftFrameGrid stft_frames(const std::vector<std::vector<double>>& frames,
                                 const WindowSpec& window_spec, unsigned threads = 0) {
  StftConfig config{window_spec, window_spec.length};
  config.validate();
  if (frames.empty()) throw Error(Errc::empty_grid, "no frames supplied");
  const auto n = static_cast<std::size_t>(window_spec.length);
  const auto window = make_window(window_spec);
  StftFrameGrid grid(config, frames.size());
  for (const auto& f : frames)
    if (f.size() != n) throw Error(Errc::configuration, "corpus frame length differs from N");
  parallel_for(
      frames.size(), [&](std::size_t t) { detail::transform_frame(frames[t], window, grid.frame(t)); },
      threads);
  return grid;
}

/// Sum over shifted copies sum_m w(i + m * hop) for i in [0, hop). Constant
/// for windows with the constant-overlap-add property.
inline std::vector<double> overlap_add_profile(const WindowSpec& spec, int hop) {
  const auto w = make_window(spec);
  std::vector<double> profile(static_cast<std::size_t>(hop), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) profile[i % static_cast<std::size_t>(hop)] += w[i];
  return profile;
}

/// Overlap-add inverse. Requires >= 2 frames and a window/stride pair whose
/// shifted copies sum to a constant; the output is divided by that constant.
inline std::vector<double> istft_ola(const StftFrameGrid& grid) {
  const auto& config = grid.config();
  if (grid.frames() < 2)
    throw Error(Errc::reconstruction_unsupported, "overlap-add needs at least two frames");
  const int hop = config.hop();
  const auto profile = overlap_add_profile(config.window, hop);
  const auto [lo, hi] = std::minmax_element(profile.begin(), profile.end());
  const double ola_constant = *lo;
  if (ola_constant <= 0.0 || *hi - *lo > 1e-12 * std::max(1.0, std::abs(*hi)))
    throw Error(Errc::reconstruction_unsupported,
                "window is not constant-overlap-add at stride " + std::to_string(hop));
  if (config.window.length % hop != 0)
    throw Error(Errc::reconstruction_unsupported, "stride must divide N");

  const std::size_t n = grid.bins();
  const auto h = static_cast<std::size_t>(hop);
  std::vector<double> out((grid.frames() - 1) * h + n, 0.0);
  for (std::size_t t = 0; t < grid.frames(); ++t) {
    auto x = idft(grid.frame(t));
    for (std::size_t i = 0; i < n; ++i) out[t * h + i] += x[i].real();
  }
  for (auto& v : out) v /= ola_constant;
  return out;
}

/// Adds U[-halfwidth, halfwidth] phase noise to bin k of every frame and
/// mirrors it into bin N-k. Magnitudes are untouched; the noise sequence is a
/// pure function of (seed, frame).
inline StftFrameGrid perturb_phase(const StftFrameGrid& grid, int bin, double noise_halfwidth,
                                   std::uint64_t seed) {
  const auto n = static_cast<int>(grid.bins());
  if (bin < 1 || bin > n / 2 - 1)
    throw Error(Errc::out_of_range,
                "bin " + std::to_string(bin) + " outside unique-phase range 1.." + std::to_string(n / 2 - 1));
  StftFrameGrid out = grid;
  const auto k = static_cast<std::size_t>(bin);
  const auto mirror = static_cast<std::size_t>(n - bin);
  for (std::size_t t = 0; t < out.frames(); ++t) {
    auto rng = SplitMix64::for_item(seed, t);
    const double u = rng.uniform(-noise_halfwidth, noise_halfwidth);
    const Complex rot(std::cos(u), std::sin(u));
    out.at(t, k) = grid.at(t, k) * rot;
    out.at(t, mirror) = std::conj(out.at(t, k));
  }
  return out;
}

}  // namespace phasedist
