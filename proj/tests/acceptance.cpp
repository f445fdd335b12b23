// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented
// beneath. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "phasedist.hpp"
#include "test_support.hpp"

using namespace phasedist;

namespace {

// Tolerances, pinned.
constexpr double kOnBinExact = 1e-9;
constexpr double kOnBinSymmetricBound = 0.01;
constexpr double kClosedFormRelative = 1e-8;
constexpr double kPdfTotalVariation = 0.02;
constexpr double kNoiseUbar = 0.05;
constexpr double kReconstructionRelative = 1e-6;
constexpr double kTable1Seconds = 1.0;
constexpr double kClosedFormSeconds = 10.0;
constexpr double kPeakSeconds = 120.0;

int failures = 0;

void note(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

void verdict(int id, const char* name, bool ok, double seconds) {
  std::printf("%s  %d  %-34s (%.2f s)\n", ok ? "PASS" : "FAIL", id, name, seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run(int id, const char* name, const std::function<bool()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note("exception: %s", e.what());
  }
  verdict(id, name, ok, seconds_since(t0));
}

bool table1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = compute_table1();
  const double elapsed = seconds_since(t0);
  bool ok = elapsed < kTable1Seconds;
  for (const auto& r : rows) {
    note("ex %d: ratio %.4f (ref %.2f) %s, angle %.4f pi (ref %.2f pi) %s", r.spec.example, r.ratio, r.spec.ratio,
         r.ratio_ok ? "ok" : "MISS", r.angle_pi, r.spec.angle_pi, r.angle_ok ? "ok" : "MISS");
    ok = ok && r.ratio_ok && r.angle_ok;
  }
  return ok;
}

bool on_bin_identity() {
  const int n = 512;
  double worst_rect = 0.0, worst_periodic = 0.0, worst_symmetric = 0.0;
  for (int k = 1; k <= n / 2 - 1; ++k) {
    const double wk = kTwoPi * k / n;
    const auto rect = AnalyticContext::for_bin(wk, k, n, 0.0);
    const auto periodic = AnalyticContext::for_bin(wk, k, n, 0.46, WindowMode::periodic);
    const auto symmetric = AnalyticContext::for_bin(wk, k, n, 0.46, WindowMode::symmetric);
    for (int j = 0; j < 100; ++j) {
      const double th = -kPi + kTwoPi * j / 100;
      auto err = [&](const AnalyticContext& c) { return std::abs(circular_difference(tone_to_stft_phase(c, th), th)); };
      worst_rect = std::max(worst_rect, err(rect));
      worst_periodic = std::max(worst_periodic, err(periodic));
      worst_symmetric = std::max(worst_symmetric, err(symmetric));
    }
  }
  note("max |phi - theta|: rectangular %.3g, Hamming periodic %.3g, Hamming symmetric %.3g rad", worst_rect,
       worst_periodic, worst_symmetric);
  return worst_rect <= kOnBinExact && worst_periodic <= kOnBinExact && worst_symmetric > 0.0 &&
         worst_symmetric <= kOnBinSymmetricBound;
}

bool closed_form_equivalence() {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> wt(0.0, kPi), th(-kPi, kPi), al(0.0, 0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 512;
    std::uniform_int_distribution<int> kd(1, n / 2 - 1);
    const auto mode = trial % 2 ? WindowMode::symmetric : WindowMode::periodic;
    const double alpha = trial % 5 == 0 ? 0.0 : al(gen);
    const int k = kd(gen);
    const double omega_t = wt(gen), theta = th(gen);
    const auto ctx = AnalyticContext::for_bin(omega_t, k, n, alpha, mode);
    const auto c = coefficient_re_im(ctx, theta);
    const auto ref = testsupport::tone_coefficient(omega_t, theta, k, n, alpha, ctx.window_denominator());
    worst = std::max(worst, std::abs(Complex(c.re, c.im) - ref) / std::abs(ref));
  }
  note("worst relative error over 200 tuples: %.3g", worst);
  return worst <= kClosedFormRelative;
}

bool peak_locations() {
  ToneExperimentOptions opt;
  opt.count = 10000;
  opt.seed = 1;
  opt.cells = 64;
  opt.window = WindowSpec::rectangular(512);
  const auto rect = run_tone_experiment(opt);
  opt.window = WindowSpec::hamming(512);
  const auto hamming = run_tone_experiment(opt);
  int identical = 0;
  for (std::size_t i = 0; i < rect.bins.size(); ++i)
    if (rect.bins[i].dominated && rect.bins[i].argmax_cell == hamming.bins[i].argmax_cell) ++identical;
  note("rectangular: %d/%d dominated bins within one cell", rect.matched_bins, rect.dominated_bins);
  note("Hamming periodic: %d/%d dominated bins within one cell", hamming.matched_bins, hamming.dominated_bins);
  note("identical argmax cell in both windows: %d/%d", identical, rect.dominated_bins);
  return rect.dominated_bins > 0 && rect.matched_bins == rect.dominated_bins &&
         hamming.dominated_bins == rect.dominated_bins && hamming.matched_bins == hamming.dominated_bins;
}

bool pdf_equivalence() {
  bool ok = true;
  for (const auto& row : kTable1) {
    const auto ctx = table1_context(row);
    const auto predicted = integrate_pdf_cells(phase_pdf_curve(ctx, 20000), 64);
    std::mt19937_64 gen(1000 + static_cast<std::uint64_t>(row.example));
    std::uniform_real_distribution<double> th(-kPi, kPi);
    PhaseHistogram h(64);
    for (int i = 0; i < 1'000'000; ++i) h.add(tone_to_stft_phase(ctx, th(gen)));
    const auto observed = h.probabilities();
    double tv = 0.0;
    for (std::size_t m = 0; m < 64; ++m) tv += std::abs(predicted[m] - observed[m]);
    tv *= 0.5;
    note("ex %d: total variation %.4f", row.example, tv);
    ok = ok && tv <= kPdfTotalVariation;
  }
  return ok;
}

bool ubar_anchors() {
  const double uniform = nonuniformity_ubar(PhaseHistogram::from_counts(std::vector<std::uint64_t>(64, 123)));
  std::vector<std::uint64_t> delta(64, 0);
  delta[32] = 5000;
  const double central = nonuniformity_ubar(PhaseHistogram::from_counts(delta));
  note("uniform %.17g, central delta %.17g", uniform, central);
  bool ok = uniform == 0.0 && central == 1.0;
  for (const auto& w : {WindowSpec::rectangular(512), WindowSpec::hamming(512)}) {
    const auto grid = stft_frames(make_corpus({CorpusKind::noise, 10000, 512, 1}), w);
    const auto set = accumulate_per_frequency(grid);
    double worst = 0.0;
    for (const auto& h : set.histograms) worst = std::max(worst, nonuniformity_ubar(h));
    note("noise corpus (alpha %.2f): max per-bin ubar %.4f", w.alpha, worst);
    ok = ok && worst <= kNoiseUbar;
  }
  return ok;
}

bool window_trend() {
  const TonalMixtureSpec spec;
  const auto frames = make_tonal_mixture(spec);
  const std::vector<int> bins{160, 200, 240};
  const auto sweep = run_alpha_sweep_frames(frames, spec.n, bins, default_alpha_grid());
  auto row_for = [&](double alpha) -> const AlphaSweepRow& {
    for (const auto& r : sweep.rows)
      if (std::abs(r.alpha - alpha) < 1e-12) return r;
    throw Error(Errc::configuration, "alpha not in sweep grid");
  };
  const auto& a0 = row_for(0.0);
  const auto& a46 = row_for(0.46);
  const auto& a50 = row_for(0.5);
  bool ok = sweep.sidelobe_monotone();
  for (std::size_t i = 0; i < bins.size(); ++i) {
    note("k=%d: ubar %.4f (alpha 0) > %.4f (0.46) > %.4f (0.5)", bins[i], a0.ubar[i], a46.ubar[i], a50.ubar[i]);
    ok = ok && a0.ubar[i] > a46.ubar[i] && a46.ubar[i] > a50.ubar[i];
  }
  note("sidelobe at pi/2: %.1f dB (alpha 0) .. %.1f dB (alpha 0.5), monotone %s", sweep.rows.front().sidelobe_db,
         sweep.rows.back().sidelobe_db, sweep.sidelobe_monotone() ? "yes" : "no");
  return ok;
}

bool quantization() {
  const auto frames = make_corpus({CorpusKind::random_tones, 10000, 512, 1});
  const auto report = run_band_quantization_experiment(stft_frames(frames, WindowSpec::rectangular(512)), 44100.0);
  bool ok = true;
  for (const auto& r : report.records) {
    note("tone corpus C=%d: URQ %.5f pi, PDF-opt %.5f pi, reduction %.2f %%", r.cells, in_pi_units(r.rms_urq),
           in_pi_units(r.rms_pdf_opt), r.reduction_percent);
    ok = ok && r.rms_pdf_opt <= r.rms_urq;
  }
  note("tone corpus average reduction %.2f %%", report.average_reduction_percent());
  ok = ok && report.average_reduction_percent() > 0.0;

  // a tonal stand-in for real audio: report only
  const auto mixture = make_tonal_mixture({});
  const auto tonal = run_band_quantization_experiment(stft_frames(mixture, WindowSpec::rectangular(512)), 44100.0);
  note("tonal mixture average reduction %.2f %% (reported, not gated)", tonal.average_reduction_percent());
  return ok;
}

bool reconstruction() {
  SplitMix64 rng(77);
  std::vector<double> x(512 * 64);
  for (auto& v : x) v = rng.uniform(-1.0, 1.0);
  bool ok = true;
  for (const auto& w : {WindowSpec::hann(512), WindowSpec::hamming(512)}) {
    const auto y = istft_ola(stft(x, {w, 256}));
    double err = 0.0, peak = 0.0;
    for (std::size_t i = 512; i + 512 < y.size(); ++i) {
      err = std::max(err, std::abs(y[i] - x[i]));
      peak = std::max(peak, std::abs(x[i]));
    }
    note("alpha %.2f: interior max error / peak = %.3g", w.alpha, err / peak);
    ok = ok && err / peak <= kReconstructionRelative;
  }
  return ok;
}

}  // namespace

int main() {
  run(1, "reference decomposition table", table1);
  run(2, "on-bin phase identity", on_bin_identity);
  {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = closed_form_equivalence();
    const double s = seconds_since(t0);
    verdict(3, "closed form vs numeric STFT", ok && s < kClosedFormSeconds, s);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = peak_locations();
    } catch (const std::exception& e) {
      note("exception: %s", e.what());
    }
    const double s = seconds_since(t0);
    verdict(4, "peak locations", ok && s < kPeakSeconds, s);
  }
  run(5, "phase density vs Monte Carlo", pdf_equivalence);
  run(6, "nonuniformity anchors", ubar_anchors);
  run(7, "window-shape trend", window_trend);
  run(8, "quantization", quantization);
  run(9, "COLA reconstruction", reconstruction);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
