#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lspstego/kernels.hpp"
#include "lspstego/lsp.hpp"

namespace lspstego {

inline constexpr int kSubVectors = 3;
inline constexpr int kCodebookSize = 256;
inline constexpr std::array<int, kSubVectors> kSubDims = {3, 3, 4};
inline constexpr std::array<int, kSubVectors> kSubOffsets = {0, 3, 6};
inline constexpr double kDefaultPredictor = 12.0 / 32.0;

/// Quantization indices of the three LSP sub-vectors of one frame.
struct IndexTriple {
  std::uint8_t ix = 0;
  std::uint8_t iy = 0;
  std::uint8_t iz = 0;

  std::uint8_t& operator[](int m) { return m == 0 ? ix : (m == 1 ? iy : iz); }
  std::uint8_t operator[](int m) const { return m == 0 ? ix : (m == 1 ? iy : iz); }
  friend bool operator==(const IndexTriple&, const IndexTriple&) = default;
};

/// One 256-entry split-VQ table.
class SubCodebook {
 public:
  SubCodebook() = default;
  /// `rows` is entry-major: entry l occupies [l*dim, (l+1)*dim).
  SubCodebook(int dim, std::vector<double> rows);

  int dim() const { return dim_; }
  std::span<const double> entry(int l) const {
    return {rows_.data() + static_cast<std::size_t>(l) * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& rows() const { return rows_; }
  kernels::CodebookPlanes planes() const {
    return {planes_.data(), static_cast<std::size_t>(dim_), kCodebookSize};
  }

  friend bool operator==(const SubCodebook& a, const SubCodebook& b) {
    return a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }

 private:
  int dim_ = 0;
  std::vector<double> rows_;
  std::vector<double> planes_;  // component-major copy for the kernels
};

/// Three sub-codebooks of dimensions 3, 3, 4.
class Codebook {
 public:
  /// Throws ConfigError unless each table has 256 entries and the dimensions are (3,3,4).
  explicit Codebook(std::array<SubCodebook, kSubVectors> subs);

  const SubCodebook& sub(int m) const { return subs_[m]; }

  friend bool operator==(const Codebook&, const Codebook&) = default;

 private:
  std::array<SubCodebook, kSubVectors> subs_;
};

struct SyntheticCodebookOptions {
  double lo = -0.4;
  double hi = 0.4;
};

/// Deterministic codebook whose entries move smoothly with the index: the
/// first component is sorted, the others follow low-frequency curves in the
/// index, and all values stay inside [lo, hi].
Codebook make_synthetic_codebook(std::uint64_t seed, const SyntheticCodebookOptions& opts = {});

inline constexpr std::uint64_t kDefaultCodebookSeed = 0x4c5350435242ULL;

struct QuantConfig {
  LspVector dc = uniform_lsp();
  double predictor = kDefaultPredictor;
};

/// Reads `key = value` lines: `predictor` (one number) and `p_dc` (ten
/// comma/space separated radians). `#` starts a comment. Throws ConfigError.
QuantConfig load_quant_config(const std::filesystem::path& path);

/// Per-stream predictor memory. Starts at p_dc so the first prediction is zero.
struct QuantState {
  LspVector prev_decoded;
  LspVector dc;
  double predictor = kDefaultPredictor;

  explicit QuantState(const QuantConfig& cfg = {})
      : prev_decoded(cfg.dc), dc(cfg.dc), predictor(cfg.predictor) {}
};

/// What a frame's quantizer search needs: the prediction residual and the
/// weights derived from the unquantized LSP.
struct QuantTarget {
  std::array<double, kLpcOrder> residual{};
  WeightMatrix weights;
};

QuantTarget prepare_target(const LspVector& p_prime, const QuantState& state);

/// Weighted error of every entry of every sub-codebook against the target.
struct ErrorTables {
  std::array<std::array<double, kCodebookSize>, kSubVectors> e{};

  double at(const IndexTriple& t) const { return e[0][t.ix] + e[1][t.iy] + e[2][t.iz]; }
};

ErrorTables error_tables(const QuantTarget& target, const Codebook& cb);

/// First index of the minimum (lowest index wins ties).
int argmin_index(std::span<const double, kCodebookSize> errors);

IndexTriple best_indices(const ErrorTables& tables);

/// Decoded LSP for `t` given the current predictor memory (not updated).
LspVector reconstruct(const IndexTriple& t, const QuantState& state, const Codebook& cb);

struct QuantResult {
  IndexTriple indices;
  LspVector decoded;
  std::array<double, kSubVectors> sub_errors{};
};

/// Unconstrained split-VQ of one frame; advances `state`.
QuantResult quantize(const LspVector& p_prime, QuantState& state, const Codebook& cb);

/// Decoder side: reconstructs from indices and advances `state`.
LspVector dequantize(const IndexTriple& t, QuantState& state, const Codebook& cb);

}  // namespace lspstego
