#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace phasedist {

struct ToneParams {
  double omega_t = 0.0;  ///< radians per sample, [0, pi]
  double theta = 0.0;    ///< radians, [-pi, pi)
  int length = 0;
};

/// x_i = cos(omega_t i + theta).
inline std::vector<double> make_tone(const ToneParams& p) {
  if (!(p.omega_t >= 0.0 && p.omega_t <= kPi)) throw Error(Errc::configuration, "tone frequency outside [0, pi]");
  if (!(p.theta >= -kPi && p.theta < kPi)) throw Error(Errc::configuration, "tone phase outside [-pi, pi)");
  if (p.length < 0) throw Error(Errc::configuration, "negative tone length");
  std::vector<double> x(static_cast<std::size_t>(p.length));
  for (int i = 0; i < p.length; ++i) x[static_cast<std::size_t>(i)] = std::cos(p.omega_t * i + p.theta);
  return x;
}

enum class CorpusKind { random_tones, noise };

struct CorpusSpec {
  CorpusKind kind = CorpusKind::random_tones;
  int count = 10000;
  int n = 512;
  std::uint64_t seed = 1;
};

/// Frequency and phase drawn for tone `index` of a random-tone corpus.
inline ToneParams corpus_tone(const CorpusSpec& spec, std::size_t index) {
  auto rng = SplitMix64::for_item(spec.seed, index);
  ToneParams p;
  p.omega_t = rng.uniform(0.0, kPi);
  p.theta = rng.uniform(-kPi, kPi);
  p.length = spec.n;
  return p;
}

/// Item `index` of the corpus; depends only on (spec, index).
inline std::vector<double> make_corpus_item(const CorpusSpec& spec, std::size_t index) {
  if (spec.kind == CorpusKind::random_tones) return make_tone(corpus_tone(spec, index));
  auto rng = SplitMix64::for_item(spec.seed, index);
  std::vector<double> x(static_cast<std::size_t>(spec.n));
  for (auto& v : x) v = rng.uniform(-1.0, 1.0);
  return x;
}

inline std::vector<std::vector<double>> make_corpus(const CorpusSpec& spec, unsigned threads = 0) {
  if (spec.count < 1) throw Error(Errc::configuration, "corpus count must be >= 1");
  if (spec.n < 1) throw Error(Errc::configuration, "corpus frame length must be >= 1");
  std::vector<std::vector<double>> frames(static_cast<std::size_t>(spec.count));
  parallel_for(frames.size(), [&](std::size_t i) { frames[i] = make_corpus_item(spec, i); }, threads);
  return frames;
}

/// Frames holding one strong low-frequency tone (random frequency in
/// [lo, hi), random phase, unit amplitude) over uniform white noise of the
/// given amplitude. Used to probe how window sidelobes let distant tones
/// dominate high-frequency bins.
struct TonalMixtureSpec {
  int count = 4000;
  int n = 512;
  std::uint64_t seed = 7;
  double tone_low = 0.02 * kPi;
  double tone_high = 0.25 * kPi;
  double noise_amplitude = 2e-3;
};

inline std::vector<std::vector<double>> make_tonal_mixture(const TonalMixtureSpec& spec, unsigned threads = 0) {
  if (spec.count < 1) throw Error(Errc::configuration, "corpus count must be >= 1");
  std::vector<std::vector<double>> frames(static_cast<std::size_t>(spec.count));
  parallel_for(
      frames.size(),
      [&](std::size_t i) {
        auto rng = SplitMix64::for_item(spec.seed, i);
        const double w = rng.uniform(spec.tone_low, spec.tone_high);
        const double th = rng.uniform(-kPi, kPi);
        auto x = make_tone({w, th, spec.n});
        for (auto& v : x) v += spec.noise_amplitude * rng.uniform(-1.0, 1.0);
        frames[i] = std::move(x);
      },
      threads);
  return frames;
}

}  // namespace phasedist
