#include "lspstego/pipeline.hpp"

#include "lspstego/errors.hpp"

namespace lspstego {

LspVector analyze_frame_lsp(const SpeechFrame& frame, const LspVector& fallback) {
  try {
    return lpc_to_lsp(lpc_analyze(frame));
  } catch (const ConversionError&) {
    return fallback;
  }
}

std::vector<LspVector> analyze_frames(std::span<const SpeechFrame> frames) {
  std::vector<LspVector> out;
  out.reserve(frames.size());
  LspVector last = uniform_lsp();
  for (const auto& f : frames) {
    last = analyze_frame_lsp(f, last);
    out.push_back(last);
  }
  return out;
}

}  // namespace lspstego
