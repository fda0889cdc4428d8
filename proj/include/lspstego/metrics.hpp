#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lspstego/magic_matrix.hpp"
#include "lspstego/quantizer.hpp"
#include "lspstego/stego_engine.hpp"

namespace lspstego {

/// Reported in place of +inf when test == reference.
inline constexpr double kSnrCapDb = 300.0;

/// 10 log10(sum ref^2 / sum (ref - test)^2), capped at kSnrCapDb.
/// Throws DomainError on length mismatch, empty input or zero reference power.
double snr_db(std::span<const double> reference, std::span<const double> test);

/// Residual-excited resynthesis: each frame's LPC residual (from its own
/// unquantized analysis) drives the synthesis filter built from the given
/// decoded LSP. Filter memories carry across frames.
/// Throws DomainError if the LSP count differs from the frame count or an LSP
/// vector is invalid.
std::vector<double> resynthesize(std::span<const SpeechFrame> frames,
                                 std::span<const LspVector> decoded);

/// Buckets 0..27 hold exact squared displacements; the last bucket collects
/// anything larger (only reachable by the parity baseline).
inline constexpr std::size_t kHistogramBuckets = 29;

struct QualityReport {
  double snr_db = kSnrCapDb;
  double mean_weighted_error_clean = 0.0;
  double mean_weighted_error_stego = 0.0;
  double relative_error_increase = 0.0;
  std::array<std::size_t, kHistogramBuckets> displacement_histogram{};
  std::size_t embedded_frames = 0;
  std::size_t embedded_bits = 0;
  double capacity_bps = 0.0;
};

struct SchemeReport {
  Scheme scheme = Scheme::kNone;
  std::size_t utterance = 0;
  QualityReport quality;
};

struct CompareConfig {
  MagicMatrix matrix = MagicMatrix::generate(0);
  Codebook codebook = make_synthetic_codebook(kDefaultCodebookSeed);
  QuantConfig quant;
};

/// Symbols for `scheme` from an MSB-first bit sequence: one per frame, each
/// bits_per_frame(scheme) wide, at most `frames` of them. A short final
/// group is zero padded.
std::vector<int> symbols_from_bits(Scheme scheme, std::span<const std::uint8_t> bits,
                                   std::size_t frames);

/// Quality of one scheme against the unmodified quantizer, given the cover
/// LSPs and the symbols to embed.
QualityReport evaluate_scheme(Scheme scheme, std::span<const SpeechFrame> frames,
                              std::span<const LspVector> cover, std::span<const int> symbols,
                              const CompareConfig& cfg);

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::kNone, Scheme::kMagic3d, Scheme::kLsb2,
                                                      Scheme::kParityQim};

/// Runs every scheme over one cover with the payload prefix that fits its
/// capacity. Padded frames are quantized but never carry payload. Throws
/// CapacityError if the cover has no embeddable frame while the payload is
/// nonempty.
std::vector<SchemeReport> compare_schemes(std::span<const SpeechFrame> cover,
                                          std::span<const std::uint8_t> payload,
                                          const CompareConfig& cfg, std::size_t utterance = 0);

/// Corpus means per scheme, in kAllSchemes order.
std::vector<SchemeReport> aggregate(std::span<const SchemeReport> rows);

/// One row per report; see kCsvHeader.
inline constexpr const char* kCsvHeader =
    "utterance,scheme,capacity_bps,embedded_bits,embedded_frames,snr_db,"
    "mean_weighted_error_clean,mean_weighted_error_stego,relative_error_increase,mean_sq_displacement";
void write_csv(std::ostream& out, std::span<const SchemeReport> rows);

/// gnuplot data: "sq_distance magic3d lsb2 parity_qim" per line (last line '>27').
void write_histogram_data(std::ostream& out, std::span<const SchemeReport> corpus_means);

struct RatePoint {
  Scheme scheme;
  double embedding_rate;  // fraction of frames carrying data
  double capacity_bps;
  double snr_db;
};

/// SNR vs embedding rate: for each scheme and rate, the first rate*N
/// embeddable frames carry data.
std::vector<RatePoint> snr_rate_curve(std::span<const SpeechFrame> cover,
                                      std::span<const std::uint8_t> payload,
                                      std::span<const double> rates, const CompareConfig& cfg);

/// gnuplot data: "rate magic3d lsb2 parity_qim" per line.
void write_rate_curve(std::ostream& out, std::span<const RatePoint> points);

double mean_sq_displacement(const QualityReport& q);

}  // namespace lspstego
