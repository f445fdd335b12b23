#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "angles.hpp"
#include "error.hpp"
#include "stft.hpp"

namespace phasedist {

inline constexpr int kDefaultPhaseCells = 64;
inline constexpr int kDefaultMagnitudeBands = 16;

/// Counts over M uniform cells partitioning [-pi, pi).
class PhaseHistogram {
 public:
  explicit PhaseHistogram(int cells = kDefaultPhaseCells) {
    if (cells < 2) throw Error(Errc::configuration, "phase histogram needs M >= 2 cells");
    counts_.assign(static_cast<std::size_t>(cells), 0);
  }

  static PhaseHistogram from_counts(std::vector<std::uint64_t> counts) {
    PhaseHistogram h(static_cast<int>(counts.size()));
    h.counts_ = std::move(counts);
    h.total_ = std::accumulate(h.counts_.begin(), h.counts_.end(), std::uint64_t{0});
    return h;
  }

  int cells() const noexcept { return static_cast<int>(counts_.size()); }
  std::uint64_t total() const noexcept { return total_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  double cell_width() const noexcept { return kTwoPi / cells(); }
  double cell_center(int m) const noexcept { return -kPi + (m + 0.5) * cell_width(); }
  double cell_lower(int m) const noexcept { return -kPi + m * cell_width(); }

  int cell_of(double phase) const noexcept {
    const double x = (principal_angle_pi(phase) + kPi) / cell_width();
    return std::clamp(static_cast<int>(std::floor(x)), 0, cells() - 1);
  }

  void add(double phase, std::uint64_t count = 1) {
    counts_[static_cast<std::size_t>(cell_of(phase))] += count;
    total_ += count;
  }

  void merge(const PhaseHistogram& other) {
    if (other.cells() != cells()) throw Error(Errc::configuration, "cannot merge histograms of different M");
    for (std::size_t m = 0; m < counts_.size(); ++m) counts_[m] += other.counts_[m];
    total_ += other.total_;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(counts_.size(), 0.0);
    if (total_ == 0) return p;
    for (std::size_t m = 0; m < p.size(); ++m) p[m] = static_cast<double>(counts_[m]) / static_cast<double>(total_);
    return p;
  }

  int argmax() const noexcept {
    return static_cast<int>(std::max_element(counts_.begin(), counts_.end()) - counts_.begin());
  }

  friend bool operator==(const PhaseHistogram& a, const PhaseHistogram& b) {
    return a.counts_ == b.counts_ && a.total_ == b.total_;
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Circular distance between two cell indices of an M-cell histogram.
inline int cell_distance(int a, int b, int cells) noexcept {
  const int d = std::abs(a - b) % cells;
  return std::min(d, cells - d);
}

/// Normalised earth mover's distance to the uniform distribution:
/// 0 for uniform counts, 1 for all mass in the central cell floor(M/2).
/// Evaluated in integer arithmetic on M * cumulative(count) - total * (k+1).
inline double nonuniformity_ubar(const PhaseHistogram& hist) {
  if (hist.total() == 0) throw Error(Errc::empty_histogram, "nonuniformity of an empty histogram");
  const auto m = static_cast<std::int64_t>(hist.cells());
  const auto total = static_cast<std::int64_t>(hist.total());
  const std::int64_t central = m / 2;
  std::int64_t cumulative = 0;
  long double numerator = 0.0L;
  std::int64_t reference = 0;  // sum_k |M [k >= central] - (k + 1)|
  for (std::int64_t k = 0; k < m; ++k) {
    cumulative += static_cast<std::int64_t>(hist.counts()[static_cast<std::size_t>(k)]);
    numerator += static_cast<long double>(std::llabs(m * cumulative - total * (k + 1)));
    reference += std::llabs((k >= central ? m : 0) - (k + 1));
  }
  return static_cast<double>(numerator / (static_cast<long double>(total) * reference));
}

struct PerFrequencyHistogramSet {
  int first_bin = 1;
  std::vector<PhaseHistogram> histograms;  ///< histograms[i] is bin first_bin + i
  std::uint64_t excluded_near_zero = 0;
  int n = 0;

  const PhaseHistogram& for_bin(int k) const { return histograms.at(static_cast<std::size_t>(k - first_bin)); }
  int last_bin() const noexcept { return first_bin + static_cast<int>(histograms.size()) - 1; }

  void merge(const PerFrequencyHistogramSet& other) {
    if (other.histograms.size() != histograms.size())
      throw Error(Errc::configuration, "cannot merge per-frequency sets of different N");
    for (std::size_t i = 0; i < histograms.size(); ++i) histograms[i].merge(other.histograms[i]);
    excluded_near_zero += other.excluded_near_zero;
  }
};

/// Per-bin phase histograms for bins 1..N/2-1; near-zero coefficients are
/// excluded and counted.
inline PerFrequencyHistogramSet accumulate_per_frequency(const StftFrameGrid& grid, int cells = kDefaultPhaseCells) {
  PerFrequencyHistogramSet set;
  set.n = static_cast<int>(grid.bins());
  if (grid.bins() < 4) return set;
  set.histograms.assign(grid.last_unique_bin(), PhaseHistogram(cells));
  for (std::size_t t = 0; t < grid.frames(); ++t) {
    for (std::size_t k = 1; k <= grid.last_unique_bin(); ++k) {
      const Complex c = grid.at(t, k);
      if (is_near_zero(c.real(), c.imag(), set.n)) {
        ++set.excluded_near_zero;
        continue;
      }
      set.histograms[k - 1].add(phase_of(c.real(), c.imag()));
    }
  }
  return set;
}

enum class Banding { log_spaced, quantile };

inline const char* to_string(Banding b) noexcept { return b == Banding::quantile ? "quantile" : "log_spaced"; }

struct PerMagnitudeHistogramSet {
  /// Strictly increasing interior thresholds; band b holds magnitudes in
  /// (thresholds[b-1], thresholds[b]]. Bands = thresholds + 1.
  std::vector<double> thresholds;
  std::vector<PhaseHistogram> histograms;
  Banding banding = Banding::quantile;
  std::uint64_t excluded_near_zero = 0;

  std::size_t bands() const noexcept { return histograms.size(); }

  std::size_t band_of(double magnitude) const noexcept {
    return static_cast<std::size_t>(std::lower_bound(thresholds.begin(), thresholds.end(), magnitude) -
                                    thresholds.begin());
  }
};

/// Phase histograms pooled over bins 1..N/2-1 and all frames, split into
/// magnitude bands computed from the pooled magnitudes.
inline PerMagnitudeHistogramSet accumulate_per_magnitude(const StftFrameGrid& grid, int cells, int bands,
                                                         Banding banding = Banding::quantile) {
  if (bands < 2) throw Error(Errc::configuration, "per-magnitude analysis needs B >= 2 bands");
  if (grid.empty()) throw Error(Errc::empty_grid, "per-magnitude analysis of an empty grid");
  const int n = static_cast<int>(grid.bins());
  PerMagnitudeHistogramSet set;
  set.banding = banding;
  std::vector<double> mags;
  std::vector<double> phases;
  mags.reserve(grid.frames() * grid.last_unique_bin());
  phases.reserve(mags.capacity());
  for (std::size_t t = 0; t < grid.frames(); ++t) {
    for (std::size_t k = 1; k <= grid.last_unique_bin(); ++k) {
      const Complex c = grid.at(t, k);
      if (is_near_zero(c.real(), c.imag(), n)) {
        ++set.excluded_near_zero;
        continue;
      }
      mags.push_back(std::abs(c));
      phases.push_back(phase_of(c.real(), c.imag()));
    }
  }
  if (mags.empty()) throw Error(Errc::banding, "every coefficient is near zero; no magnitudes to band");

  std::vector<double> thresholds;
  if (banding == Banding::quantile) {
    std::vector<double> sorted = mags;
    std::sort(sorted.begin(), sorted.end());
    for (int b = 1; b < bands; ++b) {
      const auto idx = static_cast<std::size_t>(
          std::ceil(static_cast<double>(b) * static_cast<double>(sorted.size()) / bands)) - 1;
      thresholds.push_back(sorted[std::min(idx, sorted.size() - 1)]);
    }
  } else {
    const auto [lo_it, hi_it] = std::minmax_element(mags.begin(), mags.end());
    const double lo = *lo_it, hi = *hi_it;
    for (int b = 1; b < bands; ++b) thresholds.push_back(lo * std::pow(hi / lo, static_cast<double>(b) / bands));
  }
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  set.thresholds = std::move(thresholds);
  set.histograms.assign(set.thresholds.size() + 1, PhaseHistogram(cells));
  for (std::size_t i = 0; i < mags.size(); ++i) set.histograms[set.band_of(mags[i])].add(phases[i]);
  return set;
}

}  // namespace phasedist
