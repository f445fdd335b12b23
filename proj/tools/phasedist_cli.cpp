// phasedist: STFT phase-distribution experiments on synthetic corpora and
// user WAV files.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "phasedist.hpp"

namespace fs = std::filesystem;
using namespace phasedist;

namespace {

struct StftFlags {
  int n = 512;
  int stride = 0;
  double alpha = 0.46;
  std::string mode = "periodic";

  void attach(CLI::App* app, double default_alpha) {
    alpha = default_alpha;
    app->add_option("--n", n, "STFT length N (even, >= 4)")->capture_default_str();
    app->add_option("--stride", stride, "hop in samples (0 = N/2)")->capture_default_str();
    app->add_option("--alpha", alpha, "window parameter: 0 rectangular, 0.46 Hamming, 0.5 Hann")->capture_default_str();
    app->add_option("--window-mode", mode, "periodic or symmetric")
        ->check(CLI::IsMember({"periodic", "symmetric"}))
        ->capture_default_str();
  }

  WindowSpec window() const {
    WindowSpec w{alpha, mode == "symmetric" ? WindowMode::symmetric : WindowMode::periodic, n};
    w.validate();
    return w;
  }
  StftConfig config() const {
    StftConfig c{window(), stride};
    c.validate();
    return c;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot write " + path.string());
  f << text;
  std::cout << "wrote " << path.string() << "\n";
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::vector<AudioBuffer> read_inputs(const std::vector<std::string>& paths) {
  std::vector<AudioBuffer> inputs;
  for (const auto& p : paths) {
    try {
      inputs.push_back(read_wav(p));
    } catch (const Error& e) {
      std::cerr << p << ": " << e.what() << "\n";
    }
  }
  return inputs;
}

std::pair<int, int> parse_cell_range(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) {
    const int c = std::stoi(text);
    return {c, c};
  }
  return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STFT coefficient phase-distribution analysis"};
  app.require_subcommand(1);
  std::string out_dir = "phasedist_out";
  app.add_option("--out-dir", out_dir, "directory for CSV / PGM / WAV outputs")->capture_default_str();

  // analyze ---------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "per-frequency and per-magnitude phase histograms of WAV files");
  std::vector<std::string> analyze_inputs;
  StftFlags analyze_stft;
  int phase_bins = kDefaultPhaseCells, mag_bands = kDefaultMagnitudeBands;
  std::string banding = "quantile";
  analyze->add_option("wav", analyze_inputs, "input WAV files")->required();
  analyze_stft.attach(analyze, 0.46);
  analyze->add_option("--phase-bins", phase_bins, "phase histogram cells M")->capture_default_str();
  analyze->add_option("--mag-bands", mag_bands, "magnitude bands B")->capture_default_str();
  analyze->add_option("--banding", banding, "quantile or log")
      ->check(CLI::IsMember({"quantile", "log"}))
      ->capture_default_str();

  // table1 ----------------------------------------------------------------
  auto* table1 = app.add_subcommand("table1", "c_re/c_im and P_2pi(zeta_re - zeta_im) for the five reference contexts");

  // fig2 ------------------------------------------------------------------
  auto* fig2 = app.add_subcommand("fig2", "c_re/c_im and zeta difference against tone frequency, all bins");
  int fig2_n = 16, fig2_points = 1000;
  fig2->add_option("--n", fig2_n, "STFT length N")->capture_default_str();
  fig2->add_option("--points", fig2_points, "tone frequencies per bin")->capture_default_str();

  // fig3 ------------------------------------------------------------------
  auto* fig3 = app.add_subcommand("fig3", "tone phase to STFT phase curves for the five reference contexts");
  int fig3_points = 512;
  fig3->add_option("--points", fig3_points, "theta grid size")->capture_default_str();

  // tones -----------------------------------------------------------------
  auto* tones = app.add_subcommand("tones", "Monte-Carlo random-tone experiment with peak report");
  StftFlags tones_stft;
  int tones_count = 10000;
  std::uint64_t tones_seed = 1;
  int tones_cells = kDefaultPhaseCells;
  bool tones_noise = false;
  tones_stft.attach(tones, 0.0);
  tones->add_option("--count", tones_count, "number of tones")->capture_default_str();
  tones->add_option("--seed", tones_seed, "corpus seed")->capture_default_str();
  tones->add_option("--phase-bins", tones_cells, "phase histogram cells M")->capture_default_str();
  tones->add_flag("--noise", tones_noise, "use white-noise frames instead of tones");

  // alpha-sweep -----------------------------------------------------------
  auto* sweep = app.add_subcommand("alpha-sweep", "nonuniformity and sidelobe suppression versus window alpha");
  std::vector<std::string> sweep_inputs;
  int sweep_n = 512, sweep_cells = kDefaultPhaseCells, sweep_count = 4000;
  std::vector<int> sweep_bins{160, 200, 240};
  std::string sweep_corpus = "tonal";
  std::uint64_t sweep_seed = 7;
  sweep->add_option("wav", sweep_inputs, "input WAV files (omit to use a synthetic corpus)");
  sweep->add_option("--n", sweep_n, "STFT length N")->capture_default_str();
  sweep->add_option("--bins", sweep_bins, "bins to track")->delimiter(',')->capture_default_str();
  sweep->add_option("--corpus", sweep_corpus, "synthetic corpus: tonal or noise")
      ->check(CLI::IsMember({"tonal", "noise"}))
      ->capture_default_str();
  sweep->add_option("--count", sweep_count, "synthetic corpus frames")->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "synthetic corpus seed")->capture_default_str();
  sweep->add_option("--phase-bins", sweep_cells, "phase histogram cells M")->capture_default_str();

  // quant -----------------------------------------------------------------
  auto* quant = app.add_subcommand("quant", "single URQ vs four PDF-optimized quantizers over the upper half band");
  std::vector<std::string> quant_inputs;
  StftFlags quant_stft;
  std::string quant_cells = "2-8";
  std::string quant_corpus = "tones";
  int quant_count = 10000;
  std::uint64_t quant_seed = 1;
  double quant_rate = 44100.0;
  bool quant_holdout = false;
  quant->add_option("wav", quant_inputs, "input WAV files (omit to use a synthetic corpus)");
  quant_stft.attach(quant, 0.46);
  quant->add_option("--cells", quant_cells, "cell-count range, e.g. 2-8")->capture_default_str();
  quant->add_option("--corpus", quant_corpus, "synthetic corpus: tones or noise")
      ->check(CLI::IsMember({"tones", "noise"}))
      ->capture_default_str();
  quant->add_option("--count", quant_count, "synthetic corpus frames")->capture_default_str();
  quant->add_option("--seed", quant_seed, "synthetic corpus seed")->capture_default_str();
  quant->add_option("--sample-rate", quant_rate, "sample rate assumed for synthetic corpora")->capture_default_str();
  quant->add_flag("--holdout", quant_holdout, "train on even frames, evaluate on odd frames");

  // perturb ---------------------------------------------------------------
  auto* perturb = app.add_subcommand("perturb", "add uniform phase noise to one bin and resynthesise");
  std::string perturb_in, perturb_out;
  StftFlags perturb_stft;
  int perturb_bin = 0;
  double perturb_halfwidth = kPi / 4;
  std::uint64_t perturb_seed = 1;
  perturb->add_option("input", perturb_in, "input WAV")->required();
  perturb->add_option("output", perturb_out, "output WAV (16-bit PCM)")->required();
  perturb_stft.attach(perturb, 0.46);
  perturb->add_option("--bin", perturb_bin, "bin k in 1..N/2-1")->required();
  perturb->add_option("--halfwidth", perturb_halfwidth, "noise half-width in radians")->capture_default_str();
  perturb->add_option("--seed", perturb_seed, "noise seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      auto inputs = read_inputs(analyze_inputs);
      if (inputs.empty()) {
        std::cerr << "no readable input files\n";
        return 2;
      }
      AnalysisOptions opt;
      opt.stft = analyze_stft.config();
      opt.cells = phase_bins;
      opt.bands = mag_bands;
      opt.banding = banding == "log" ? Banding::log_spaced : Banding::quantile;
      const auto res = analyze_signals(inputs, opt);
      const auto dir = prepare_dir(out_dir);
      write_pgm((dir / "per_frequency.pgm").string(), render_histogram_image(res.per_frequency));
      write_pgm((dir / "per_magnitude.pgm").string(), render_histogram_image(res.per_magnitude));
      std::cout << "wrote " << (dir / "per_frequency.pgm").string() << "\nwrote " << (dir / "per_magnitude.pgm").string()
                << "\n";
      write_text(dir / "ubar_per_bin.csv", format_ubar_csv(res, opt.stft.window.length));
      write_text(dir / "per_frequency_histograms.csv", format_histograms_csv(res.per_frequency));
      write_text(dir / "per_magnitude_histograms.csv", format_histograms_csv(res.per_magnitude));
      std::printf("%zu frames, %llu near-zero coefficients excluded\ntop-10 nonuniform bins:\n", res.frames,
                  static_cast<unsigned long long>(res.per_frequency.excluded_near_zero));
      for (int k : res.top_bins(10))
        std::printf("  k=%4d  %9.1f Hz  ubar=%.4f\n", k, res.sample_rate * k / opt.stft.window.length,
                    res.ubar[static_cast<std::size_t>(k - 1)]);
      for (std::size_t b = 0; b < res.per_magnitude.bands(); ++b)
        std::printf("  band %2zu  ubar=%.4f\n", b,
                    res.per_magnitude.histograms[b].total() ? nonuniformity_ubar(res.per_magnitude.histograms[b]) : 0.0);
      return 0;
    }
    if (*table1) {
      const auto rows = compute_table1();
      std::cout << format_table1_text(rows);
      write_text(prepare_dir(out_dir) / "table1.csv", format_table1_csv(rows));
      for (const auto& r : rows)
        if (!r.ok()) return 1;
      return 0;
    }
    if (*fig2) {
      const auto res = compute_fig2(fig2_n, fig2_points);
      write_text(prepare_dir(out_dir) / "fig2.csv", format_fig2_csv(res));
      for (const auto& a : res.anchors)
        std::printf("anchor k=%d: ratio=%.9f angle=%.9fpi %s\n", a.k, a.ratio, in_pi_units(a.angle), a.ok ? "ok" : "FAIL");
      return res.anchors_ok() ? 0 : 1;
    }
    if (*fig3) {
      const auto res = compute_fig3(fig3_points);
      write_text(prepare_dir(out_dir) / "fig3.csv", format_fig3_csv(res));
      for (std::size_t e = 0; e < res.linear_deviation.size(); ++e)
        std::printf("example %zu: max deviation from linear fit %.4f rad\n", e + 1, res.linear_deviation[e]);
      return 0;
    }
    if (*tones) {
      ToneExperimentOptions opt;
      opt.count = tones_count;
      opt.window = tones_stft.window();
      opt.seed = tones_seed;
      opt.cells = tones_cells;
      opt.kind = tones_noise ? CorpusKind::noise : CorpusKind::random_tones;
      const auto res = run_tone_experiment(opt);
      const auto dir = prepare_dir(out_dir);
      write_pgm((dir / "tones_per_frequency.pgm").string(), render_histogram_image(res.histograms));
      std::cout << "wrote " << (dir / "tones_per_frequency.pgm").string() << "\n";
      write_text(dir / "tones_peaks.csv", format_peak_report_csv(res));
      std::printf("bins with >= 90%% of tones on one side: %d, argmax within one cell of prediction: %d\n",
                  res.dominated_bins, res.matched_bins);
      std::printf("max per-bin ubar: %.4f\n", res.max_ubar);
      return 0;
    }
    if (*sweep) {
      AlphaSweepResult res;
      if (!sweep_inputs.empty()) {
        std::vector<std::vector<double>> signals;
        for (auto& in : read_inputs(sweep_inputs)) signals.push_back(std::move(in.samples));
        if (signals.empty()) {
          std::cerr << "no readable input files\n";
          return 2;
        }
        res = run_alpha_sweep_signals(signals, sweep_n, sweep_bins, default_alpha_grid(), sweep_cells);
      } else {
        std::vector<std::vector<double>> frames;
        if (sweep_corpus == "tonal")
          frames = make_tonal_mixture({sweep_count, sweep_n, sweep_seed});
        else
          frames = make_corpus({CorpusKind::noise, sweep_count, sweep_n, sweep_seed});
        res = run_alpha_sweep_frames(frames, sweep_n, sweep_bins, default_alpha_grid(), sweep_cells);
      }
      const auto csv = format_alpha_sweep_csv(res);
      std::cout << csv;
      write_text(prepare_dir(out_dir) / "alpha_sweep.csv", csv);
      std::printf("sidelobe suppression monotone: %s\n", res.sidelobe_monotone() ? "yes" : "no");
      return 0;
    }
    if (*quant) {
      QuantExperimentOptions opt;
      std::tie(opt.min_cells, opt.max_cells) = parse_cell_range(quant_cells);
      opt.holdout = quant_holdout;
      const auto config = quant_stft.config();
      StftFrameGrid grid;
      double rate = quant_rate;
      if (!quant_inputs.empty()) {
        auto inputs = read_inputs(quant_inputs);
        if (inputs.empty()) {
          std::cerr << "no readable input files\n";
          return 2;
        }
        rate = inputs.front().sample_rate;
        bool first = true;
        for (const auto& in : inputs) {
          if (in.samples.size() < static_cast<std::size_t>(config.window.length)) continue;
          auto g = stft(in.samples, config);
          if (first) {
            grid = std::move(g);
            first = false;
          } else {
            grid.append(g);
          }
        }
      } else {
        const CorpusSpec spec{quant_corpus == "tones" ? CorpusKind::random_tones : CorpusKind::noise, quant_count,
                              config.window.length, quant_seed};
        grid = stft_frames(make_corpus(spec), config.window);
      }
      const auto report = run_band_quantization_experiment(grid, rate, opt);
      std::cout << format_report_text(report);
      write_text(prepare_dir(out_dir) / "quant_report.csv", format_report_csv(report));
      return 0;
    }
    if (*perturb) {
      const auto in = read_wav(perturb_in);
      const auto config = perturb_stft.config();
      const auto res = perturb_audio(in, config, perturb_bin, perturb_halfwidth, perturb_seed);
      write_wav16(perturb_out, res.output, static_cast<std::uint32_t>(in.sample_rate));
      std::printf("perturbed bin %d (%.1f Hz) with U[-%.4f, %.4f] rad phase noise; wrote %s\n", perturb_bin,
                  res.bin_hz, perturb_halfwidth, perturb_halfwidth, perturb_out.c_str());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == Errc::out_of_range || e.code() == Errc::configuration ? 2 : 1;
  }
  return 0;
}
