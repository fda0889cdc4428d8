#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace lspstego {

inline constexpr int kLpcOrder = 10;
inline constexpr std::size_t kFrameSamples = 240;  // 30 ms at 8 kHz
inline constexpr int kSampleRate = 8000;
inline constexpr double kFrameSeconds = 0.03;

/// 30 ms of 8 kHz mono PCM. `padded` marks a trailing frame completed with zeros.
struct SpeechFrame {
  std::array<std::int16_t, kFrameSamples> samples{};
  bool padded = false;
};

/// Predictor of A(z) = 1 - sum_{j=1}^{10} a_j z^-j. a[0] holds a_1.
struct LpcCoeffs {
  std::array<double, kLpcOrder> a{};
  bool stable = true;
};

using Autocorrelation = std::array<double, kLpcOrder + 1>;

/// Relative white-noise correction applied to lag 0 before the recursion.
inline constexpr double kNoiseFloor = 1e-5;

std::array<double, kFrameSamples> hamming_window();

/// Hamming-windowed autocorrelation of a frame, lags 0..10, with the noise
/// floor applied to lag 0.
Autocorrelation frame_autocorrelation(const SpeechFrame& frame);

/// Levinson-Durbin recursion on lags 0..10. Zero energy yields the white
/// predictor. `stable` is false if any reflection coefficient reaches
/// magnitude 1; the recursion stops there.
LpcCoeffs levinson_durbin(const Autocorrelation& r);

/// Windowed autocorrelation followed by Levinson-Durbin.
LpcCoeffs lpc_analyze(const SpeechFrame& frame);

/// Step-down stability test: all roots of A(z) strictly inside the unit circle.
bool is_minimum_phase(std::span<const double, kLpcOrder> a);

/// Residual e[n] = x[n] - sum a_j x[n-j]. `history` holds the previous 10
/// input samples (most recent last) and is updated in place.
void analysis_filter(const LpcCoeffs& lpc, std::span<const double> in, std::span<double> out,
                     std::array<double, kLpcOrder>& history);

/// y[n] = e[n] + sum a_j y[n-j]. `history` holds the previous 10 outputs
/// (most recent last) and is updated in place.
void synthesis_filter(const LpcCoeffs& lpc, std::span<const double> in, std::span<double> out,
                      std::array<double, kLpcOrder>& history);

}  // namespace lspstego
