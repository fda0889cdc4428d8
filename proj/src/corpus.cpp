#include "lspstego/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lspstego/rng.hpp"

namespace lspstego {

namespace {

/// All-pole predictor with five resonances at the given radii/angles.
LpcCoeffs formant_filter(Rng& rng) {
  // Product of (1 - 2 r cos(t) z^-1 + r^2 z^-2) over five resonances.
  std::array<double, kLpcOrder + 1> poly{};
  poly[0] = 1.0;
  int degree = 0;
  const double base[5] = {500.0, 1500.0, 2500.0, 3300.0, 3800.0};
  for (double centre : base) {
    const double freq = std::clamp(centre * rng.uniform(0.75, 1.25), 150.0, 3900.0);
    const double theta = 2.0 * std::numbers::pi * freq / kSampleRate;
    const double r = rng.uniform(0.80, 0.97);
    const double b1 = -2.0 * r * std::cos(theta), b2 = r * r;
    for (int k = degree + 2; k >= 0; --k) {
      double v = poly[k];
      if (k >= 1) v += b1 * poly[k - 1];
      if (k >= 2) v += b2 * poly[k - 2];
      poly[k] = v;
    }
    degree += 2;
  }
  LpcCoeffs lpc;
  for (int j = 1; j <= kLpcOrder; ++j) lpc.a[j - 1] = -poly[j];
  return lpc;
}

}  // namespace

LpcCoeffs random_stable_lpc(std::uint64_t seed, double max_reflection) {
  Rng rng(seed);
  std::array<double, kLpcOrder> a{}, prev{};
  for (int i = 1; i <= kLpcOrder; ++i) {
    const double k = rng.uniform(-max_reflection, max_reflection);
    prev = a;
    a[i - 1] = k;
    for (int j = 1; j < i; ++j) a[j - 1] = prev[j - 1] - k * prev[i - j - 1];
  }
  LpcCoeffs out;
  out.a = a;
  out.stable = true;
  return out;
}

std::vector<std::int16_t> synth_utterance(std::uint64_t seed, std::size_t frames) {
  Rng rng(seed);
  const std::size_t total = frames * kFrameSamples;
  std::vector<double> x(total, 0.0);
  std::array<double, kLpcOrder> hist{};

  std::size_t pos = 0;
  double pulse_phase = 0.0;
  while (pos < total) {
    const std::size_t seg = kFrameSamples * (3 + rng.below(6));
    const std::size_t end = std::min(total, pos + seg);
    const bool voiced = rng.uniform() < 0.65;
    const double pitch = rng.uniform(50.0, 160.0);
    const double gain = voiced ? rng.uniform(300.0, 900.0) : rng.uniform(80.0, 300.0);
    const LpcCoeffs filt = formant_filter(rng);

    std::vector<double> excitation(end - pos);
    for (double& e : excitation) {
      double v = 0.05 * rng.normal();
      if (voiced) {
        pulse_phase += pitch / kSampleRate;
        if (pulse_phase >= 1.0) {
          pulse_phase -= 1.0;
          v += 8.0;
        }
      } else {
        v = rng.normal();
      }
      e = gain * v;
    }
    synthesis_filter(filt, excitation, std::span<double>(x).subspan(pos, end - pos), hist);
    pos = end;
  }

  // Normalise to a comfortable level, then quantise.
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 12000.0 / peak : 0.0;
  std::vector<std::int16_t> out(total);
  for (std::size_t i = 0; i < total; ++i) {
    out[i] = static_cast<std::int16_t>(std::lround(std::clamp(x[i] * scale, -32768.0, 32767.0)));
  }
  return out;
}

std::vector<std::vector<SpeechFrame>> synthetic_corpus(const CorpusOptions& opts) {
  std::vector<std::vector<SpeechFrame>> corpus;
  for (std::size_t u = 0; u < opts.utterances; ++u) {
    const auto samples = synth_utterance(opts.seed * 1000003ULL + u, opts.frames_per_utterance);
    std::vector<SpeechFrame> frames(opts.frames_per_utterance);
    for (std::size_t f = 0; f < frames.size(); ++f) {
      std::copy_n(samples.begin() + static_cast<std::ptrdiff_t>(f * kFrameSamples), kFrameSamples,
                  frames[f].samples.begin());
    }
    corpus.push_back(std::move(frames));
  }
  return corpus;
}

}  // namespace lspstego
