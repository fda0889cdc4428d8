#pragma once

#include <cstdint>
#include <vector>

#include "lspstego/lpc.hpp"

namespace lspstego {

/// Speech-like test signal: segments of 3 to 8 frames, each driven by either
/// a glottal-like pulse train (pitch 50..160 Hz) or white noise, shaped by a
/// random stable 10th-order all-pole filter with formant-like resonances.
/// Deterministic in `seed`.
std::vector<std::int16_t> synth_utterance(std::uint64_t seed, std::size_t frames);

struct CorpusOptions {
  std::uint64_t seed = 20240601;
  std::size_t utterances = 20;
  std::size_t frames_per_utterance = 100;
};

/// Utterances already split into frames.
std::vector<std::vector<SpeechFrame>> synthetic_corpus(const CorpusOptions& opts = {});

/// Random stable predictor built from random reflection coefficients in
/// (-max_reflection, max_reflection).
LpcCoeffs random_stable_lpc(std::uint64_t seed, double max_reflection = 0.9);

}  // namespace lspstego
