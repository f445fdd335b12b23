#pragma once

// Reproduction experiments shared by the command-line tool and the
// acceptance suite. Angle-valued CSV columns are in units of pi.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "angles.hpp"
#include "histogram.hpp"
#include "sidelobe.hpp"
#include "signal.hpp"
#include "stft.hpp"
#include "wav.hpp"

namespace phasedist {

inline std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Reference decomposition table: c_re / c_im and P_2pi(zeta_re - zeta_im) for five contexts.

struct Table1Spec {
  int example;
  double omega_k_pi;      ///< nominal bin frequency, snapped to the nearest bin
  double delta_minus_pi;  ///< omega_t = nominal omega_k + delta_minus
  int n;
  double ratio;
  double angle_pi;
};

inline constexpr std::array<Table1Spec, 5> kTable1{{
    {1, 0.90, -0.02, 512, 1.18, 0.52},
    {2, 0.90, -0.10, 512, 1.93, 0.57},
    {3, 0.90, -0.25, 512, 3.25, 0.66},
    {4, 0.90, -0.45, 512, 4.73, 0.79},
    {5, 0.90, -0.45, 2048, 4.82, 0.77},
}};

inline constexpr double kTable1RatioTolerance = 0.01;
inline constexpr double kTable1AngleTolerancePi = 0.01;

inline AnalyticContext table1_context(const Table1Spec& row) {
  const int k = nearest_bin(row.omega_k_pi * kPi, row.n);
  const double omega_t = (row.omega_k_pi + row.delta_minus_pi) * kPi;
  return AnalyticContext::for_bin(omega_t, k, row.n);
}

struct Table1Result {
  Table1Spec spec;
  int k = 0;
  double omega_k = 0.0;
  double omega_t = 0.0;
  double ratio = 0.0;
  double angle_pi = 0.0;
  bool ratio_ok = false;
  bool angle_ok = false;
  bool ok() const noexcept { return ratio_ok && angle_ok; }
};

inline std::vector<Table1Result> compute_table1() {
  std::vector<Table1Result> out;
  for (const auto& row : kTable1) {
    const auto ctx = table1_context(row);
    const auto dec = rect_decompose(ctx.omega_t, ctx.omega_k, ctx.n);
    Table1Result r;
    r.spec = row;
    r.k = nearest_bin(ctx.omega_k, ctx.n);
    r.omega_k = ctx.omega_k;
    r.omega_t = ctx.omega_t;
    r.ratio = dec.ratio();
    r.angle_pi = in_pi_units(dec.angle_difference());
    r.ratio_ok = std::abs(r.ratio - row.ratio) <= kTable1RatioTolerance + 1e-12;
    r.angle_ok = std::abs(r.angle_pi - row.angle_pi) <= kTable1AngleTolerancePi + 1e-12;
    out.push_back(r);
  }
  return out;
}

inline std::string format_table1_csv(const std::vector<Table1Result>& rows) {
  std::string out = "example,k,omega_k_pi,omega_t_pi,delta_minus_pi,n,ratio,angle_pi,expected_ratio,expected_angle_pi,ok\n";
  for (const auto& r : rows) {
    out += std::to_string(r.spec.example) + "," + std::to_string(r.k) + "," + csv_number(in_pi_units(r.omega_k)) + "," +
           csv_number(in_pi_units(r.omega_t)) + "," + csv_number(in_pi_units(r.omega_t - r.omega_k)) + "," +
           std::to_string(r.spec.n) + "," + csv_number(r.ratio) + "," + csv_number(r.angle_pi) + "," +
           csv_number(r.spec.ratio) + "," + csv_number(r.spec.angle_pi) + "," + (r.ok() ? "1" : "0") + "\n";
  }
  return out;
}

inline std::string format_table1_text(const std::vector<Table1Result>& rows) {
  std::string out = "Ex.  k     omega_k   omega_t     N   c_re/c_im (ref)   P2pi(zr-zi) (ref)\n";
  char buf[200];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-3d  %-4d  %.4fpi  %.4fpi  %4d   %5.3f (%4.2f) %s    %5.3fpi (%4.2fpi) %s\n",
                  r.spec.example, r.k, in_pi_units(r.omega_k), in_pi_units(r.omega_t), r.spec.n, r.ratio, r.spec.ratio,
                  r.ratio_ok ? "ok  " : "FAIL", r.angle_pi, r.spec.angle_pi, r.angle_ok ? "ok" : "FAIL");
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// c_re / c_im and P_2pi(zeta_re - zeta_im) against tone frequency, every bin.

struct Fig2Row {
  int k;
  double omega_t;
  double ratio;
  double angle;
};

struct Fig2Anchor {
  int k;
  double ratio;
  double angle;
  bool ok;
};

struct Fig2Result {
  int n = 0;
  int points = 0;
  std::vector<Fig2Row> rows;
  std::vector<Fig2Anchor> anchors;
  bool anchors_ok() const {
    return std::all_of(anchors.begin(), anchors.end(), [](const auto& a) { return a.ok; });
  }
};

inline Fig2Result compute_fig2(int n, int points = 1000) {
  WindowSpec{0.0, WindowMode::periodic, n}.validate();
  if (points < 1) throw Error(Errc::configuration, "sweep needs at least one point");
  Fig2Result res;
  res.n = n;
  res.points = points;
  for (int k = 1; k <= n / 2 - 1; ++k) {
    const double omega_k = kTwoPi * k / n;
    for (int j = 0; j < points; ++j) {
      const double omega_t = kPi * (j + 0.5) / points;
      const auto d = rect_decompose(omega_t, omega_k, n);
      res.rows.push_back({k, omega_t, d.ratio(), d.angle_difference()});
    }
    const auto d = rect_decompose(omega_k, omega_k, n);
    const bool ok = std::abs(d.ratio() - 1.0) <= 1e-6 && std::abs(d.angle_difference() - 0.5 * kPi) <= 1e-6;
    res.anchors.push_back({k, d.ratio(), d.angle_difference(), ok});
  }
  return res;
}

inline std::string format_fig2_csv(const Fig2Result& r) {
  std::string out = "k,omega_t_pi,ratio,angle_pi\n";
  for (const auto& row : r.rows)
    out += std::to_string(row.k) + "," + csv_number(in_pi_units(row.omega_t)) + "," + csv_number(row.ratio) + "," +
           csv_number(in_pi_units(row.angle)) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// phi_k(theta) for the five reference contexts.

/// Largest absolute residual of the least-squares line through the
/// unwrapped curve phi(theta).
inline double max_linear_fit_deviation(const std::vector<double>& theta, const std::vector<double>& phi) {
  const std::size_t n = theta.size();
  if (n < 2) return 0.0;
  std::vector<double> u(n);
  u[0] = phi[0];
  for (std::size_t i = 1; i < n; ++i) u[i] = u[i - 1] + circular_difference(phi[i], phi[i - 1]);
  double mt = 0.0, mu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += theta[i];
    mu += u[i];
  }
  mt /= static_cast<double>(n);
  mu /= static_cast<double>(n);
  double stt = 0.0, stu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (theta[i] - mt) * (theta[i] - mt);
    stu += (theta[i] - mt) * (u[i] - mu);
  }
  const double slope = stu / stt;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(u[i] - (mu + slope * (theta[i] - mt))));
  return worst;
}

struct Fig3Result {
  std::vector<double> theta;
  std::array<std::vector<double>, 5> phi;
  std::array<double, 5> linear_deviation{};
};

inline Fig3Result compute_fig3(int points = 512) {
  if (points < 2) throw Error(Errc::configuration, "theta grid needs at least two points");
  Fig3Result r;
  for (int j = 0; j < points; ++j) r.theta.push_back(-kPi + kTwoPi * j / points);
  for (std::size_t e = 0; e < kTable1.size(); ++e) {
    const auto ctx = table1_context(kTable1[e]);
    const auto dec = rect_decompose(ctx.omega_t, ctx.omega_k, ctx.n);
    for (double th : r.theta) r.phi[e].push_back(phase_via_decomposition(dec, th));
    r.linear_deviation[e] = max_linear_fit_deviation(r.theta, r.phi[e]);
  }
  return r;
}

inline std::string format_fig3_csv(const Fig3Result& r) {
  std::string out = "theta_pi,phi_ex1_pi,phi_ex2_pi,phi_ex3_pi,phi_ex4_pi,phi_ex5_pi\n";
  for (std::size_t j = 0; j < r.theta.size(); ++j) {
    out += csv_number(in_pi_units(r.theta[j]));
    for (const auto& curve : r.phi) out += "," + csv_number(in_pi_units(curve[j]));
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo tone experiment: random tones, per-bin phase histograms and
// their argmax against the intrinsic peak predictions.

struct ToneExperimentOptions {
  int count = 10000;
  WindowSpec window = WindowSpec::rectangular(512);
  std::uint64_t seed = 1;
  int cells = kDefaultPhaseCells;
  CorpusKind kind = CorpusKind::random_tones;
  double dominance = 0.9;  ///< fraction of tones on one side for a bin to be checked
  unsigned threads = 0;
};

struct BinPeakReport {
  int k = 0;
  double fraction_below = 0.5;
  bool dominated = false;
  ToneSide side = ToneSide::tone_above;
  std::array<double, 2> predicted{};
  std::array<int, 2> predicted_cells{};
  int argmax_cell = 0;
  double argmax_phase = 0.0;
  int cell_error = 0;  ///< circular distance from argmax to the nearer predicted cell
  double ubar = 0.0;
};

struct ToneExperimentResult {
  PerFrequencyHistogramSet histograms;
  std::vector<BinPeakReport> bins;
  int dominated_bins = 0;
  int matched_bins = 0;  ///< dominated bins whose argmax is within one cell
  double max_ubar = 0.0;
};

inline ToneExperimentResult run_tone_experiment(const ToneExperimentOptions& opt) {
  const int n = opt.window.length;
  const CorpusSpec spec{opt.kind, opt.count, n, opt.seed};
  const auto grid = stft_frames(make_corpus(spec, opt.threads), opt.window, opt.threads);
  ToneExperimentResult res;
  res.histograms = accumulate_per_frequency(grid, opt.cells);

  std::vector<double> tone_freqs;
  if (opt.kind == CorpusKind::random_tones)
    for (std::size_t i = 0; i < static_cast<std::size_t>(opt.count); ++i) tone_freqs.push_back(corpus_tone(spec, i).omega_t);

  for (int k = 1; k <= n / 2 - 1; ++k) {
    const double omega_k = kTwoPi * k / n;
    const auto& h = res.histograms.for_bin(k);
    BinPeakReport b;
    b.k = k;
    if (!tone_freqs.empty()) {
      const auto below = std::count_if(tone_freqs.begin(), tone_freqs.end(), [&](double w) { return w < omega_k; });
      b.fraction_below = static_cast<double>(below) / static_cast<double>(tone_freqs.size());
      b.dominated = std::max(b.fraction_below, 1.0 - b.fraction_below) >= opt.dominance;
    }
    b.side = b.fraction_below >= 0.5 ? ToneSide::tone_below : ToneSide::tone_above;
    b.predicted = pdf_peak_locations(omega_k, n, b.side);
    b.predicted_cells = {h.cell_of(b.predicted[0]), h.cell_of(b.predicted[1])};
    b.argmax_cell = h.argmax();
    b.argmax_phase = h.cell_center(b.argmax_cell);
    b.cell_error = std::min(cell_distance(b.argmax_cell, b.predicted_cells[0], h.cells()),
                            cell_distance(b.argmax_cell, b.predicted_cells[1], h.cells()));
    b.ubar = h.total() > 0 ? nonuniformity_ubar(h) : 0.0;
    res.max_ubar = std::max(res.max_ubar, b.ubar);
    if (b.dominated) {
      ++res.dominated_bins;
      if (b.cell_error <= 1) ++res.matched_bins;
    }
    res.bins.push_back(b);
  }
  return res;
}

inline std::string format_peak_report_csv(const ToneExperimentResult& r) {
  std::string out =
      "k,fraction_below,dominated,side,predicted_a_pi,predicted_b_pi,argmax_phase_pi,argmax_cell,cell_error,ubar\n";
  for (const auto& b : r.bins) {
    out += std::to_string(b.k) + "," + csv_number(b.fraction_below) + "," + (b.dominated ? "1" : "0") + "," +
           (b.side == ToneSide::tone_below ? "below" : "above") + "," + csv_number(in_pi_units(b.predicted[0])) + "," +
           csv_number(in_pi_units(b.predicted[1])) + "," + csv_number(in_pi_units(b.argmax_phase)) + "," +
           std::to_string(b.argmax_cell) + "," + std::to_string(b.cell_error) + "," + csv_number(b.ubar) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Window-shape sweep: nonuniformity of tracked bins and sidelobe suppression
// at pi/2 offset as alpha moves from rectangular to Hann.

inline std::vector<double> default_alpha_grid() {
  std::vector<double> a;
  for (int i = 0; i <= 10; ++i) a.push_back(0.05 * i);
  a.push_back(0.46);
  std::sort(a.begin(), a.end());
  return a;
}

struct AlphaSweepRow {
  double alpha = 0.0;
  double sidelobe_db = 0.0;
  std::vector<double> ubar;  ///< one per tracked bin
};

struct AlphaSweepResult {
  std::vector<int> bins;
  std::vector<AlphaSweepRow> rows;
  bool sidelobe_monotone() const {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].sidelobe_db > rows[i - 1].sidelobe_db) return false;
    return true;
  }
};

/// `analyze` turns a periodic window into a grid for the corpus under study.
inline AlphaSweepResult run_alpha_sweep(const std::function<StftFrameGrid(const WindowSpec&)>& analyze, int n,
                                        const std::vector<int>& bins, const std::vector<double>& alphas,
                                        int cells = kDefaultPhaseCells) {
  for (int k : bins)
    if (k < 1 || k > n / 2 - 1) throw Error(Errc::out_of_range, "tracked bin " + std::to_string(k) + " out of range");
  AlphaSweepResult res;
  res.bins = bins;
  for (double alpha : alphas) {
    const WindowSpec w{alpha, WindowMode::periodic, n};
    const auto set = accumulate_per_frequency(analyze(w), cells);
    AlphaSweepRow row;
    row.alpha = alpha;
    row.sidelobe_db = sidelobe_suppression_db(w, 0.5 * kPi);
    for (int k : bins) {
      const auto& h = set.for_bin(k);
      row.ubar.push_back(h.total() > 0 ? nonuniformity_ubar(h) : 0.0);
    }
    res.rows.push_back(std::move(row));
  }
  return res;
}

inline AlphaSweepResult run_alpha_sweep_frames(const std::vector<std::vector<double>>& frames, int n,
                                               const std::vector<int>& bins, const std::vector<double>& alphas,
                                               int cells = kDefaultPhaseCells) {
  return run_alpha_sweep([&](const WindowSpec& w) { return stft_frames(frames, w); }, n, bins, alphas, cells);
}

inline AlphaSweepResult run_alpha_sweep_signals(const std::vector<std::vector<double>>& signals, int n,
                                                const std::vector<int>& bins, const std::vector<double>& alphas,
                                                int cells = kDefaultPhaseCells) {
  return run_alpha_sweep(
      [&](const WindowSpec& w) {
        StftFrameGrid grid;
        bool first = true;
        for (const auto& s : signals) {
          if (s.size() < static_cast<std::size_t>(n)) continue;
          auto g = stft(s, StftConfig{w, n / 2});
          if (first) {
            grid = std::move(g);
            first = false;
          } else {
            grid.append(g);
          }
        }
        if (first) throw Error(Errc::empty_grid, "no input long enough for one frame");
        return grid;
      },
      n, bins, alphas, cells);
}

inline std::string format_alpha_sweep_csv(const AlphaSweepResult& r) {
  std::string out = "alpha,sidelobe_db_at_half_pi";
  for (int k : r.bins) out += ",ubar_k" + std::to_string(k);
  out += "\n";
  for (const auto& row : r.rows) {
    out += csv_number(row.alpha) + "," + csv_number(row.sidelobe_db);
    for (double u : row.ubar) out += "," + csv_number(u);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Audio analysis: per-frequency and per-magnitude histograms for a corpus.

struct AnalysisOptions {
  StftConfig stft{WindowSpec::hamming(512), 256};
  int cells = kDefaultPhaseCells;
  int bands = kDefaultMagnitudeBands;
  Banding banding = Banding::quantile;
};

struct AnalysisResult {
  PerFrequencyHistogramSet per_frequency;
  PerMagnitudeHistogramSet per_magnitude;
  std::vector<double> ubar;  ///< ubar[i] for bin i + 1
  std::size_t frames = 0;
  double sample_rate = 0.0;  ///< of the first input

  /// Bins sorted by descending ubar, at most `count`.
  std::vector<int> top_bins(std::size_t count) const {
    std::vector<int> ks(ubar.size());
    for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = static_cast<int>(i) + 1;
    std::stable_sort(ks.begin(), ks.end(), [&](int a, int b) { return ubar[static_cast<std::size_t>(a - 1)] > ubar[static_cast<std::size_t>(b - 1)]; });
    if (ks.size() > count) ks.resize(count);
    return ks;
  }
};

inline AnalysisResult analyze_signals(const std::vector<AudioBuffer>& inputs, const AnalysisOptions& opt) {
  StftFrameGrid grid;
  bool first = true;
  AnalysisResult res;
  for (const auto& in : inputs) {
    if (in.samples.size() < static_cast<std::size_t>(opt.stft.window.length)) continue;
    auto g = stft(in.samples, opt.stft);
    if (first) {
      grid = std::move(g);
      res.sample_rate = in.sample_rate;
      first = false;
    } else {
      grid.append(g);
    }
  }
  if (first) throw Error(Errc::empty_grid, "no input long enough for one STFT frame");
  res.frames = grid.frames();
  res.per_frequency = accumulate_per_frequency(grid, opt.cells);
  res.per_magnitude = accumulate_per_magnitude(grid, opt.cells, opt.bands, opt.banding);
  for (const auto& h : res.per_frequency.histograms) res.ubar.push_back(h.total() > 0 ? nonuniformity_ubar(h) : 0.0);
  return res;
}

/// One row per bin; header names the cell centres in radians.
inline std::string format_histograms_csv(const PerFrequencyHistogramSet& set) {
  if (set.histograms.empty()) return "k\n";
  const auto& h0 = set.histograms.front();
  std::string out = "k";
  for (int m = 0; m < h0.cells(); ++m) out += "," + csv_number(h0.cell_center(m));
  out += "\n";
  for (std::size_t i = 0; i < set.histograms.size(); ++i) {
    out += std::to_string(set.first_bin + static_cast<int>(i));
    for (auto c : set.histograms[i].counts()) out += "," + std::to_string(c);
    out += "\n";
  }
  return out;
}

inline std::string format_histograms_csv(const PerMagnitudeHistogramSet& set) {
  if (set.histograms.empty()) return "band,upper_threshold\n";
  const auto& h0 = set.histograms.front();
  std::string out = "band,upper_threshold";
  for (int m = 0; m < h0.cells(); ++m) out += "," + csv_number(h0.cell_center(m));
  out += "\n";
  for (std::size_t b = 0; b < set.histograms.size(); ++b) {
    out += std::to_string(b) + "," + (b < set.thresholds.size() ? csv_number(set.thresholds[b]) : std::string("inf"));
    for (auto c : set.histograms[b].counts()) out += "," + std::to_string(c);
    out += "\n";
  }
  return out;
}

inline std::string format_ubar_csv(const AnalysisResult& r, int n) {
  std::string out = "k,omega_k_pi,freq_hz,ubar,count\n";
  for (std::size_t i = 0; i < r.ubar.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    out += std::to_string(k) + "," + csv_number(2.0 * k / n) + "," + csv_number(r.sample_rate * k / n) + "," +
           csv_number(r.ubar[i]) + "," + std::to_string(r.per_frequency.histograms[i].total()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Perturb one bin's phase and resynthesise.

struct PerturbResult {
  std::vector<double> output;
  double bin_hz = 0.0;
};

inline PerturbResult perturb_audio(const AudioBuffer& in, const StftConfig& config, int bin, double halfwidth,
                                   std::uint64_t seed) {
  const auto grid = stft(in.samples, config);
  PerturbResult r;
  r.output = istft_ola(perturb_phase(grid, bin, halfwidth, seed));
  r.bin_hz = in.sample_rate * bin / config.window.length;
  return r;
}

}  // namespace phasedist
