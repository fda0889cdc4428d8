#include "lspstego/lpc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lspstego/kernels.hpp"

namespace lspstego {

std::array<double, kFrameSamples> hamming_window() {
  std::array<double, kFrameSamples> w{};
  for (std::size_t n = 0; n < kFrameSamples; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                  static_cast<double>(kFrameSamples - 1));
  }
  return w;
}

Autocorrelation frame_autocorrelation(const SpeechFrame& frame) {
  static const auto window = hamming_window();
  std::array<double, kFrameSamples> x{};
  for (std::size_t n = 0; n < kFrameSamples; ++n) x[n] = frame.samples[n] * window[n];
  Autocorrelation r{};
  kernels::autocorrelation(x, r);
  r[0] *= 1.0 + kNoiseFloor;
  return r;
}

LpcCoeffs levinson_durbin(const Autocorrelation& r) {
  LpcCoeffs out;
  if (!(r[0] > 0.0)) return out;

  std::array<double, kLpcOrder> a{};
  std::array<double, kLpcOrder> prev{};
  double err = r[0];
  for (int i = 1; i <= kLpcOrder; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc -= a[j - 1] * r[i - j];
    const double k = acc / err;
    if (!(std::abs(k) < 1.0)) {
      out.stable = false;
      break;
    }
    prev = a;
    a[i - 1] = k;
    for (int j = 1; j < i; ++j) a[j - 1] = prev[j - 1] - k * prev[i - j - 1];
    err *= 1.0 - k * k;
  }
  out.a = a;
  return out;
}

LpcCoeffs lpc_analyze(const SpeechFrame& frame) {
  return levinson_durbin(frame_autocorrelation(frame));
}

bool is_minimum_phase(std::span<const double, kLpcOrder> coeffs) {
  std::array<double, kLpcOrder> a{};
  std::copy(coeffs.begin(), coeffs.end(), a.begin());
  for (int i = kLpcOrder; i >= 1; --i) {
    const double k = a[i - 1];
    if (!(std::abs(k) < 1.0)) return false;
    const double denom = 1.0 - k * k;
    std::array<double, kLpcOrder> next{};
    for (int j = 1; j < i; ++j) next[j - 1] = (a[j - 1] + k * a[i - j - 1]) / denom;
    a = next;
  }
  return true;
}

void analysis_filter(const LpcCoeffs& lpc, std::span<const double> in, std::span<double> out,
                     std::array<double, kLpcOrder>& history) {
  for (std::size_t n = 0; n < in.size(); ++n) {
    double pred = 0.0;
    for (int j = 1; j <= kLpcOrder; ++j) pred += lpc.a[j - 1] * history[kLpcOrder - j];
    out[n] = in[n] - pred;
    std::shift_left(history.begin(), history.end(), 1);
    history.back() = in[n];
  }
}

void synthesis_filter(const LpcCoeffs& lpc, std::span<const double> in, std::span<double> out,
                      std::array<double, kLpcOrder>& history) {
  for (std::size_t n = 0; n < in.size(); ++n) {
    double pred = 0.0;
    for (int j = 1; j <= kLpcOrder; ++j) pred += lpc.a[j - 1] * history[kLpcOrder - j];
    const double y = in[n] + pred;
    out[n] = y;
    std::shift_left(history.begin(), history.end(), 1);
    history.back() = y;
  }
}

}  // namespace lspstego
