#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "lspstego/magic_matrix.hpp"
#include "lspstego/quantizer.hpp"

namespace lspstego {

inline constexpr int kKeyBits = 6;
inline constexpr std::size_t kHeaderKeys = 6;  // 32-bit length + 4 zero bits

enum class Scheme { kNone, kMagic3d, kLsb2, kParityQim };

std::string_view scheme_name(Scheme s);
/// Throws DomainError for an unknown name.
Scheme parse_scheme(std::string_view name);

/// Hidden bits carried by one frame: 0, 6, 6, 3.
int bits_per_frame(Scheme s);

/// bits_per_frame / 30 ms.
double capacity_bps(Scheme s);

// ---- payload framing ----------------------------------------------------

/// MSB-first binary string ("001111") to integer. Throws DomainError on other characters.
unsigned bits_to_value(std::string_view bits);

/// Value to a `width`-character MSB-first binary string.
std::string value_to_bits(unsigned value, int width);

/// Unpacks bytes into bits, MSB first.
std::vector<std::uint8_t> bytes_to_bits(std::span<const std::uint8_t> bytes);

/// Length header (32-bit big-endian length plus 4 zero bits, 36 bits)
/// followed by the payload bits, cut into bits_per_frame(scheme) symbols;
/// the last symbol is zero padded. For magic3d that is 6 header keys and
/// ceil(8 * length / 6) payload keys.
std::vector<int> frame_payload(std::span<const std::uint8_t> payload, Scheme scheme = Scheme::kMagic3d);

/// Frames needed by frame_payload: 6 + ceil(8 * length / 6) for magic3d.
std::size_t frames_required(std::size_t payload_bytes, Scheme scheme = Scheme::kMagic3d);

/// Symbol a frame carries under `scheme` (matrix value, 2 LSBs x 3, parities).
int extract_symbol(const IndexTriple& t, Scheme scheme, const MagicMatrix& m);

// ---- 3D-Magic embedding -------------------------------------------------

struct EmbedRecord {
  std::size_t frame_no = 0;
  IndexTriple original;
  IndexTriple chosen;
  int key = 0;
  int pattern_id = 0;
  int sq_distance = 0;
};

/// Nearest of the four pattern matches for `key` around `original`
/// (ties to the lowest pattern id).
EmbedRecord embed_frame(const IndexTriple& original, int key, const MagicMatrix& m);

/// Key carried by a triple: the matrix value at its coordinate.
int extract_frame(const IndexTriple& t, const MagicMatrix& m);

inline Coord3 to_coord(const IndexTriple& t) { return {t.ix, t.iy, t.iz}; }

// ---- baselines ----------------------------------------------------------

/// Replaces the two LSBs of each index with successive bit pairs of `bits6`
/// (bits 5-4 -> ix, 3-2 -> iy, 1-0 -> iz).
IndexTriple embed_lsb2_baseline(const IndexTriple& original, unsigned bits6);
unsigned extract_lsb2_baseline(const IndexTriple& t);

/// Per sub-vector, the weighted-error argmin restricted to indices whose
/// parity equals the corresponding bit of `bits3` (bit 2 -> ix).
IndexTriple embed_parity_qim_baseline(const ErrorTables& tables, unsigned bits3);
IndexTriple embed_parity_qim_baseline(const QuantTarget& target, unsigned bits3, const Codebook& cb);
unsigned extract_parity_qim_baseline(const IndexTriple& t);

// ---- stream level -------------------------------------------------------

/// Per-frame record of one scheme run over a cover.
struct FrameOutcome {
  IndexTriple best;    // unconstrained argmin under this run's predictor state
  IndexTriple chosen;  // index actually transmitted
  LspVector decoded;
  double best_error = 0.0;
  double chosen_error = 0.0;
  int sq_distance = 0;  // squared displacement chosen vs best (wrapped for magic3d)
  int pattern_id = 0;   // magic3d only
  int symbol = -1;      // embedded value, -1 if the frame carried nothing
};

/// Quantizes `cover` frame by frame; frame i embeds `symbols[i]` when
/// i < symbols.size() and symbols[i] >= 0. The predictor always advances
/// with the chosen indices. `m` is only read for kMagic3d.
std::vector<FrameOutcome> run_scheme(Scheme scheme, std::span<const LspVector> cover,
                                     std::span<const int> symbols, const MagicMatrix& m,
                                     const Codebook& cb, const QuantConfig& cfg = {});

struct EmbedResult {
  std::vector<IndexTriple> indices;
  std::vector<EmbedRecord> records;
  std::vector<FrameOutcome> frames;
};

/// Embeds a framed payload, one key per frame from frame 0. Only the first
/// `embeddable_frames` frames may carry data (defaults to all). Throws
/// CapacityError if the framed payload does not fit.
EmbedResult embed_stream(std::span<const LspVector> cover, std::span<const std::uint8_t> payload,
                         const MagicMatrix& m, const Codebook& cb, const QuantConfig& cfg = {},
                         std::size_t embeddable_frames = std::numeric_limits<std::size_t>::max());

/// Same framing with a baseline scheme. `records` is only filled for magic3d.
EmbedResult embed_stream(Scheme scheme, std::span<const LspVector> cover,
                         std::span<const std::uint8_t> payload, const MagicMatrix& m,
                         const Codebook& cb, const QuantConfig& cfg = {},
                         std::size_t embeddable_frames = std::numeric_limits<std::size_t>::max());

/// Reads the length header and payload keys. Throws TruncationError if the
/// stream is shorter than the header or the declared payload.
std::vector<std::uint8_t> extract_stream(std::span<const IndexTriple> stego, const MagicMatrix& m);

std::vector<std::uint8_t> extract_stream(std::span<const IndexTriple> stego, Scheme scheme,
                                         const MagicMatrix& m);

}  // namespace lspstego
