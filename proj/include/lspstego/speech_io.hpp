#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lspstego/lpc.hpp"
#include "lspstego/magic_matrix.hpp"
#include "lspstego/quantizer.hpp"

namespace lspstego {

struct WavClip {
  int sample_rate = kSampleRate;
  int channels = 1;
  std::vector<std::int16_t> samples;
};

/// Parses RIFF/WAVE. Throws WavError on malformed structure and
/// WavFormatUnsupported (naming the parameter) unless 8 kHz mono 16-bit PCM.
WavClip read_wav(std::istream& in);
WavClip read_wav(const std::filesystem::path& path);

void write_wav(const WavClip& clip, std::ostream& out);
void write_wav(const WavClip& clip, const std::filesystem::path& path);

/// Non-overlapping 240-sample frames; a trailing remainder is zero padded
/// into a final frame with `padded` set.
std::vector<SpeechFrame> frame_split(const WavClip& clip);

/// Concatenated frame samples (padding included).
std::vector<std::int16_t> join_frames(std::span<const SpeechFrame> frames);

// "LSPIDX01", u32 LE frame count, then ix iy iz per frame.
void write_lspi(std::span<const IndexTriple> frames, std::ostream& out);
void write_lspi(std::span<const IndexTriple> frames, const std::filesystem::path& path);
std::vector<IndexTriple> read_lspi(std::istream& in);
std::vector<IndexTriple> read_lspi(const std::filesystem::path& path);

// "M3DMAGIC", version byte 0x01, u64 LE seed, 512 cells x-major then y then z.
void write_matrix(const MagicMatrix& m, std::ostream& out);
void write_matrix(const MagicMatrix& m, const std::filesystem::path& path);
/// Re-validates unless `check` is false; throws MatrixFormatError if the
/// cube breaks any constraint.
MagicMatrix read_matrix(std::istream& in, bool check = true);
MagicMatrix read_matrix(const std::filesystem::path& path, bool check = true);

// "LSPCBK01", then the three sub-codebooks as 256 x dim LE float64.
void write_codebook(const Codebook& cb, std::ostream& out);
void write_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook read_codebook(std::istream& in);
Codebook read_codebook(const std::filesystem::path& path);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(std::span<const std::uint8_t> bytes, const std::filesystem::path& path);

}  // namespace lspstego
