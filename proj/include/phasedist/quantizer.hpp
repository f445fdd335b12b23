#pragma once

// Scalar phase quantizers over [-pi, pi): the uniform rounding quantizer and
// Lloyd-Max designs trained on a phase histogram, plus the upper-band
// comparison experiment.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "histogram.hpp"
#include "parallel.hpp"
#include "stft.hpp"

namespace phasedist {

struct ScalarQuantizer {
  std::vector<double> boundaries;  ///< C + 1 ascending values, -pi .. pi
  std::vector<double> levels;      ///< C values, levels[i] inside cell i

  int cells() const noexcept { return static_cast<int>(levels.size()); }

  /// Index of the cell holding `phase`; a phase on an interior boundary goes
  /// to the upper cell.
  int cell_of(double phase) const noexcept {
    const double x = principal_angle_pi(phase);
    const auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end() - 1, x);
    return static_cast<int>(it - (boundaries.begin() + 1));
  }

  friend bool operator==(const ScalarQuantizer&, const ScalarQuantizer&) = default;
};

inline ScalarQuantizer design_urq(int cells) {
  if (cells < 2) throw Error(Errc::configuration, "quantizer needs at least 2 cells");
  ScalarQuantizer q;
  const double width = kTwoPi / cells;
  for (int i = 0; i <= cells; ++i) q.boundaries.push_back(-kPi + i * width);
  q.boundaries.back() = kPi;
  for (int i = 0; i < cells; ++i) q.levels.push_back(-kPi + (i + 0.5) * width);
  return q;
}

namespace detail {

// The histogram is read as a piecewise-constant density; these integrate it
// over [a, b] exactly.
struct CellMoments {
  double mass = 0.0;
  double first = 0.0;
};

inline CellMoments moments(const PhaseHistogram& h, const std::vector<double>& p, double a, double b) {
  CellMoments out;
  const double w = h.cell_width();
  for (int m = 0; m < h.cells(); ++m) {
    if (p[static_cast<std::size_t>(m)] == 0.0) continue;
    const double lo = std::max(a, h.cell_lower(m));
    const double hi = std::min(b, h.cell_lower(m) + w);
    if (hi <= lo) continue;
    const double d = p[static_cast<std::size_t>(m)] / w;
    out.mass += d * (hi - lo);
    out.first += d * 0.5 * (hi * hi - lo * lo);
  }
  return out;
}

inline double histogram_mse(const PhaseHistogram& h, const std::vector<double>& p, const ScalarQuantizer& q) {
  const double w = h.cell_width();
  double mse = 0.0;
  for (int i = 0; i < q.cells(); ++i) {
    const double a = q.boundaries[static_cast<std::size_t>(i)];
    const double b = q.boundaries[static_cast<std::size_t>(i) + 1];
    const double l = q.levels[static_cast<std::size_t>(i)];
    for (int m = 0; m < h.cells(); ++m) {
      if (p[static_cast<std::size_t>(m)] == 0.0) continue;
      const double lo = std::max(a, h.cell_lower(m));
      const double hi = std::min(b, h.cell_lower(m) + w);
      if (hi <= lo) continue;
      const double d = p[static_cast<std::size_t>(m)] / w;
      mse += d * (std::pow(hi - l, 3) - std::pow(lo - l, 3)) / 3.0;
    }
  }
  return std::max(0.0, mse);
}

}  // namespace detail

/// RMS error of `q` on the density represented by `hist` (linear distance).
inline double histogram_rms(const PhaseHistogram& hist, const ScalarQuantizer& q) {
  return std::sqrt(detail::histogram_mse(hist, hist.probabilities(), q));
}

struct LloydTrace {
  ScalarQuantizer quantizer;
  std::vector<double> rms;  ///< rms[0] is the URQ starting point, then one entry per iteration
  int iterations = 0;
};

/// Lloyd-Max alternation starting from the URQ: levels become conditional
/// means of their cells, interior boundaries become level midpoints. Stops
/// once the RMS changes by less than `tol` or after `max_iters` iterations.
inline LloydTrace design_pdf_optimized_traced(const PhaseHistogram& hist, int cells, double tol = 1e-6,
                                              int max_iters = 500) {
  if (hist.total() == 0) throw Error(Errc::empty_histogram, "cannot design a quantizer from an empty histogram");
  const auto populated = std::count_if(hist.counts().begin(), hist.counts().end(), [](auto c) { return c > 0; });
  if (populated < cells)
    throw Error(Errc::degenerate_design, std::to_string(populated) + " populated histogram cells for " +
                                             std::to_string(cells) + " quantizer cells");
  const auto p = hist.probabilities();
  LloydTrace trace;
  trace.quantizer = design_urq(cells);
  auto& q = trace.quantizer;
  trace.rms.push_back(std::sqrt(detail::histogram_mse(hist, p, q)));
  for (int it = 0; it < max_iters; ++it) {
    for (int i = 0; i < cells; ++i) {
      const double a = q.boundaries[static_cast<std::size_t>(i)];
      const double b = q.boundaries[static_cast<std::size_t>(i) + 1];
      const auto mom = detail::moments(hist, p, a, b);
      q.levels[static_cast<std::size_t>(i)] = mom.mass > 0.0 ? mom.first / mom.mass : 0.5 * (a + b);
    }
    for (int i = 1; i < cells; ++i)
      q.boundaries[static_cast<std::size_t>(i)] =
          0.5 * (q.levels[static_cast<std::size_t>(i) - 1] + q.levels[static_cast<std::size_t>(i)]);
    trace.rms.push_back(std::sqrt(detail::histogram_mse(hist, p, q)));
    ++trace.iterations;
    if (std::abs(trace.rms[trace.rms.size() - 2] - trace.rms.back()) < tol) break;
  }
  return trace;
}

inline ScalarQuantizer design_pdf_optimized(const PhaseHistogram& hist, int cells, double tol = 1e-6,
                                            int max_iters = 500) {
  return design_pdf_optimized_traced(hist, cells, tol, max_iters).quantizer;
}

struct QuantizationResult {
  std::vector<int> indices;
  std::vector<double> reconstructed;
  double rms_error = 0.0;  ///< RMS of the wrapped difference P_pi(phi - phi_hat)
};

inline QuantizationResult quantize(const ScalarQuantizer& q, std::span<const double> phases) {
  QuantizationResult r;
  r.indices.reserve(phases.size());
  r.reconstructed.reserve(phases.size());
  double sq = 0.0;
  for (double phi : phases) {
    const int idx = q.cell_of(phi);
    const double level = q.levels[static_cast<std::size_t>(idx)];
    r.indices.push_back(idx);
    r.reconstructed.push_back(level);
    const double e = circular_difference(phi, level);
    sq += e * e;
  }
  r.rms_error = phases.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(phases.size()));
  return r;
}

struct QuantRecord {
  int cells = 0;
  double rms_urq = 0.0;
  double rms_pdf_opt = 0.0;
  double reduction_percent = 0.0;  ///< 100 (1 - rms_pdf_opt / rms_urq)
};

struct QuarterBand {
  int first_bin = 0;
  int last_bin = 0;
  double low_hz = 0.0;
  double high_hz = 0.0;
  std::size_t training_samples = 0;
  std::size_t evaluation_samples = 0;
};

struct QuantExperimentOptions {
  int min_cells = 2;
  int max_cells = 8;
  int training_cells = 256;  ///< histogram resolution for Lloyd-Max training
  bool holdout = false;      ///< train on even frames, evaluate on odd frames
  double tol = 1e-6;
  int max_iters = 500;
};

struct QuantExperimentReport {
  std::vector<QuantRecord> records;
  std::array<QuarterBand, 4> quarters{};
  double sample_rate = 0.0;
  std::size_t evaluation_samples = 0;
  QuantExperimentOptions options;

  double average_reduction_percent() const {
    if (records.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : records) s += r.reduction_percent;
    return s / static_cast<double>(records.size());
  }
};

/// Single URQ over the upper half band versus four Lloyd-Max quantizers,
/// one per quarter of that band, for each cell count.
inline QuantExperimentReport run_band_quantization_experiment(const StftFrameGrid& grid, double sample_rate,
                                                              const QuantExperimentOptions& options = {}) {
  if (grid.empty()) throw Error(Errc::empty_grid, "quantization experiment on an empty grid");
  if (!(sample_rate > 0.0)) throw Error(Errc::configuration, "sample rate must be positive");
  if (options.min_cells < 2 || options.max_cells < options.min_cells)
    throw Error(Errc::configuration, "invalid cell range");
  const int n = static_cast<int>(grid.bins());
  QuantExperimentReport report;
  report.sample_rate = sample_rate;
  report.options = options;

  const int first = (n + 3) / 4;
  const int last = n / 2 - 1;
  auto quarter_of = [&](int k) {
    return std::clamp(static_cast<int>(std::floor((static_cast<double>(k) / n - 0.25) * 16.0)), 0, 3);
  };
  for (int qi = 0; qi < 4; ++qi) {
    auto& band = report.quarters[static_cast<std::size_t>(qi)];
    band.first_bin = -1;
    band.low_hz = sample_rate * (0.25 + qi / 16.0);
    band.high_hz = sample_rate * (0.25 + (qi + 1) / 16.0);
  }
  for (int k = first; k <= last; ++k) {
    auto& band = report.quarters[static_cast<std::size_t>(quarter_of(k))];
    if (band.first_bin < 0) band.first_bin = k;
    band.last_bin = k;
  }

  std::array<std::vector<double>, 4> train, eval;
  for (std::size_t t = 0; t < grid.frames(); ++t) {
    const bool to_train = !options.holdout || t % 2 == 0;
    const bool to_eval = !options.holdout || t % 2 == 1;
    for (int k = first; k <= last; ++k) {
      const Complex c = grid.at(t, static_cast<std::size_t>(k));
      if (is_near_zero(c.real(), c.imag(), n)) continue;
      const double phi = phase_of(c.real(), c.imag());
      const auto qi = static_cast<std::size_t>(quarter_of(k));
      if (to_train) train[qi].push_back(phi);
      if (to_eval) eval[qi].push_back(phi);
    }
  }
  for (std::size_t qi = 0; qi < 4; ++qi) {
    report.quarters[qi].training_samples = train[qi].size();
    report.quarters[qi].evaluation_samples = eval[qi].size();
    report.evaluation_samples += eval[qi].size();
    if (train[qi].size() < static_cast<std::size_t>(100 * options.max_cells) || eval[qi].empty())
      throw Error(Errc::insufficient_data, "quarter " + std::to_string(qi) + " has " +
                                               std::to_string(train[qi].size()) + " training phases, need >= " +
                                               std::to_string(100 * options.max_cells));
  }

  std::array<PhaseHistogram, 4> hists{PhaseHistogram(options.training_cells), PhaseHistogram(options.training_cells),
                                      PhaseHistogram(options.training_cells), PhaseHistogram(options.training_cells)};
  for (std::size_t qi = 0; qi < 4; ++qi)
    for (double phi : train[qi]) hists[qi].add(phi);

  for (int cells = options.min_cells; cells <= options.max_cells; ++cells) {
    const auto urq = design_urq(cells);
    std::array<double, 4> sq_urq{}, sq_opt{};
    parallel_for(4, [&](std::size_t qi) {
      const auto opt = design_pdf_optimized(hists[qi], cells, options.tol, options.max_iters);
      const auto ru = quantize(urq, eval[qi]);
      const auto ro = quantize(opt, eval[qi]);
      const auto count = static_cast<double>(eval[qi].size());
      sq_urq[qi] = ru.rms_error * ru.rms_error * count;
      sq_opt[qi] = ro.rms_error * ro.rms_error * count;
    });
    double su = 0.0, so = 0.0;
    for (std::size_t qi = 0; qi < 4; ++qi) {
      su += sq_urq[qi];
      so += sq_opt[qi];
    }
    QuantRecord rec;
    rec.cells = cells;
    rec.rms_urq = std::sqrt(su / static_cast<double>(report.evaluation_samples));
    rec.rms_pdf_opt = std::sqrt(so / static_cast<double>(report.evaluation_samples));
    rec.reduction_percent = 100.0 * (1.0 - rec.rms_pdf_opt / rec.rms_urq);
    report.records.push_back(rec);
  }
  return report;
}

inline std::string format_report_csv(const QuantExperimentReport& r) {
  std::string out = "cells,rms_urq_pi,rms_pdf_opt_pi,reduction_percent\n";
  char buf[160];
  for (const auto& rec : r.records) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.4f\n", rec.cells, in_pi_units(rec.rms_urq),
                  in_pi_units(rec.rms_pdf_opt), rec.reduction_percent);
    out += buf;
  }
  return out;
}

inline std::string format_report_text(const QuantExperimentReport& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "upper-band phase quantization (fs = %.0f Hz, %zu phases%s)\n", r.sample_rate,
                r.evaluation_samples, r.options.holdout ? ", held-out evaluation" : ", trained and evaluated on same data");
  out += buf;
  out += "error: wrapped difference P_pi(phi - phi_hat); training histogram " +
         std::to_string(r.options.training_cells) + " cells\n";
  for (std::size_t qi = 0; qi < 4; ++qi) {
    const auto& b = r.quarters[qi];
    std::snprintf(buf, sizeof buf, "  quarter %zu: bins %d-%d (%.1f-%.1f Hz), %zu training phases\n", qi, b.first_bin,
                  b.last_bin, b.low_hz, b.high_hz, b.training_samples);
    out += buf;
  }
  out += "  cells   RMS URQ (pi)   RMS PDF-opt (pi)   reduction %\n";
  for (const auto& rec : r.records) {
    std::snprintf(buf, sizeof buf, "  %5d   %12.5f   %16.5f   %11.2f\n", rec.cells, in_pi_units(rec.rms_urq),
                  in_pi_units(rec.rms_pdf_opt), rec.reduction_percent);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "average reduction: %.2f %%\n", r.average_reduction_percent());
  out += buf;
  return out;
}

}  // namespace phasedist
