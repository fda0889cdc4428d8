#pragma once

// Frame-level front end: speech frames to unquantized LSP vectors.

#include <span>
#include <vector>

#include "lspstego/lpc.hpp"
#include "lspstego/lsp.hpp"
#include "lspstego/quantizer.hpp"

namespace lspstego {

/// LPC analysis followed by LPC -> LSP. If the frame's filter cannot be
/// converted, `fallback` is returned instead (the previous frame's LSP in
/// `analyze_frames`).
LspVector analyze_frame_lsp(const SpeechFrame& frame, const LspVector& fallback);

std::vector<LspVector> analyze_frames(std::span<const SpeechFrame> frames);

}  // namespace lspstego
