#include "lspstego/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "lspstego/errors.hpp"
#include "lspstego/pipeline.hpp"

namespace lspstego {

double snr_db(std::span<const double> reference, std::span<const double> test) {
  if (reference.size() != test.size()) {
    throw DomainError("snr: length mismatch " + std::to_string(reference.size()) + " vs " +
                      std::to_string(test.size()));
  }
  if (reference.empty()) throw DomainError("snr: empty input");
  double signal = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    signal += reference[i] * reference[i];
    const double d = reference[i] - test[i];
    noise += d * d;
  }
  if (!(signal > 0.0)) throw DomainError("snr: reference has zero power");
  if (noise == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(signal / noise));
}

std::vector<double> resynthesize(std::span<const SpeechFrame> frames,
                                 std::span<const LspVector> decoded) {
  if (frames.size() != decoded.size()) {
    throw DomainError("resynthesize: " + std::to_string(decoded.size()) + " LSP vectors for " +
                      std::to_string(frames.size()) + " frames");
  }
  std::vector<double> out(frames.size() * kFrameSamples);
  std::array<double, kLpcOrder> analysis_mem{}, synthesis_mem{};
  std::array<double, kFrameSamples> x{}, residual{};
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (!is_valid_lsp(decoded[f])) throw DomainError("resynthesize: invalid LSP at frame " + std::to_string(f));
    std::copy(frames[f].samples.begin(), frames[f].samples.end(), x.begin());
    analysis_filter(lpc_analyze(frames[f]), x, residual, analysis_mem);
    synthesis_filter(lsp_to_lpc(decoded[f]), residual,
                     std::span<double>(out).subspan(f * kFrameSamples, kFrameSamples), synthesis_mem);
  }
  return out;
}

double mean_sq_displacement(const QualityReport& q) {
  if (q.embedded_frames == 0) return 0.0;
  double total = 0.0;
  for (std::size_t d = 0; d + 1 < kHistogramBuckets; ++d)
    total += static_cast<double>(d) * static_cast<double>(q.displacement_histogram[d]);
  // Overflow bucket counted at its lower bound.
  total += static_cast<double>(kHistogramBuckets - 1) *
           static_cast<double>(q.displacement_histogram[kHistogramBuckets - 1]);
  return total / static_cast<double>(q.embedded_frames);
}

std::vector<int> symbols_from_bits(Scheme scheme, std::span<const std::uint8_t> bits,
                                   std::size_t frames) {
  const int width = bits_per_frame(scheme);
  std::vector<int> symbols;
  if (width == 0) return symbols;
  for (std::size_t i = 0; i < bits.size() && symbols.size() < frames; i += width) {
    int v = 0;
    for (int j = 0; j < width; ++j) {
      v <<= 1;
      if (i + j < bits.size()) v |= bits[i + j];
    }
    symbols.push_back(v);
  }
  return symbols;
}

namespace {

double mean_of(const std::vector<FrameOutcome>& run, double FrameOutcome::*field) {
  if (run.empty()) return 0.0;
  double s = 0.0;
  for (const auto& fo : run) s += fo.*field;
  return s / static_cast<double>(run.size());
}

double snr_or_cap(std::span<const double> ref, std::span<const double> test) {
  const bool silent = std::all_of(ref.begin(), ref.end(), [](double v) { return v == 0.0; });
  if (silent && std::equal(ref.begin(), ref.end(), test.begin(), test.end())) return kSnrCapDb;
  return snr_db(ref, test);
}

struct CleanReference {
  std::vector<FrameOutcome> run;
  std::vector<double> signal;
};

CleanReference clean_reference(std::span<const SpeechFrame> frames, std::span<const LspVector> cover,
                               const CompareConfig& cfg) {
  CleanReference ref;
  ref.run = run_scheme(Scheme::kNone, cover, {}, cfg.matrix, cfg.codebook, cfg.quant);
  std::vector<LspVector> decoded;
  for (const auto& fo : ref.run) decoded.push_back(fo.decoded);
  ref.signal = resynthesize(frames, decoded);
  return ref;
}

QualityReport evaluate_against(const CleanReference& clean, Scheme scheme,
                               std::span<const SpeechFrame> frames, std::span<const LspVector> cover,
                               std::span<const int> symbols, const CompareConfig& cfg) {
  const auto run = run_scheme(scheme, cover, symbols, cfg.matrix, cfg.codebook, cfg.quant);
  std::vector<LspVector> decoded;
  for (const auto& fo : run) decoded.push_back(fo.decoded);
  const auto stego_signal = resynthesize(frames, decoded);

  QualityReport q;
  q.snr_db = snr_or_cap(clean.signal, stego_signal);
  q.mean_weighted_error_clean = mean_of(clean.run, &FrameOutcome::best_error);
  q.mean_weighted_error_stego = mean_of(run, &FrameOutcome::chosen_error);
  q.relative_error_increase =
      q.mean_weighted_error_clean > 0.0
          ? (q.mean_weighted_error_stego - q.mean_weighted_error_clean) / q.mean_weighted_error_clean
          : 0.0;
  for (const auto& fo : run) {
    if (fo.symbol < 0) continue;
    ++q.embedded_frames;
    const auto bucket = std::min<std::size_t>(static_cast<std::size_t>(fo.sq_distance), kHistogramBuckets - 1);
    ++q.displacement_histogram[bucket];
  }
  q.embedded_bits = q.embedded_frames * static_cast<std::size_t>(bits_per_frame(scheme));
  q.capacity_bps = capacity_bps(scheme);
  return q;
}

std::size_t embeddable_count(std::span<const SpeechFrame> frames) {
  return static_cast<std::size_t>(
      std::count_if(frames.begin(), frames.end(), [](const SpeechFrame& f) { return !f.padded; }));
}

}  // namespace

QualityReport evaluate_scheme(Scheme scheme, std::span<const SpeechFrame> frames,
                              std::span<const LspVector> cover, std::span<const int> symbols,
                              const CompareConfig& cfg) {
  return evaluate_against(clean_reference(frames, cover, cfg), scheme, frames, cover, symbols, cfg);
}

std::vector<SchemeReport> compare_schemes(std::span<const SpeechFrame> cover,
                                          std::span<const std::uint8_t> payload,
                                          const CompareConfig& cfg, std::size_t utterance) {
  const std::size_t embeddable = embeddable_count(cover);
  if (!payload.empty() && embeddable == 0) throw CapacityError(1, 0);

  const auto lsps = analyze_frames(cover);
  const auto clean = clean_reference(cover, lsps, cfg);
  const auto bits = bytes_to_bits(payload);

  std::vector<SchemeReport> rows;
  for (Scheme s : kAllSchemes) {
    const auto symbols = symbols_from_bits(s, bits, embeddable);
    SchemeReport r;
    r.scheme = s;
    r.utterance = utterance;
    r.quality = evaluate_against(clean, s, cover, lsps, symbols, cfg);
    r.quality.embedded_bits = std::min(r.quality.embedded_bits, bits.size());
    rows.push_back(r);
  }
  return rows;
}

std::vector<SchemeReport> aggregate(std::span<const SchemeReport> rows) {
  std::vector<SchemeReport> out;
  for (Scheme s : kAllSchemes) {
    SchemeReport acc;
    acc.scheme = s;
    acc.quality.snr_db = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (r.scheme != s) continue;
      ++n;
      auto& q = acc.quality;
      q.snr_db += r.quality.snr_db;
      q.mean_weighted_error_clean += r.quality.mean_weighted_error_clean;
      q.mean_weighted_error_stego += r.quality.mean_weighted_error_stego;
      q.relative_error_increase += r.quality.relative_error_increase;
      for (std::size_t b = 0; b < kHistogramBuckets; ++b)
        q.displacement_histogram[b] += r.quality.displacement_histogram[b];
      q.embedded_frames += r.quality.embedded_frames;
      q.embedded_bits += r.quality.embedded_bits;
    }
    if (n == 0) continue;
    auto& q = acc.quality;
    q.snr_db /= static_cast<double>(n);
    q.mean_weighted_error_clean /= static_cast<double>(n);
    q.mean_weighted_error_stego /= static_cast<double>(n);
    q.relative_error_increase /= static_cast<double>(n);
    q.capacity_bps = capacity_bps(s);
    out.push_back(acc);
  }
  return out;
}

void write_csv(std::ostream& out, std::span<const SchemeReport> rows) {
  out << kCsvHeader << '\n';
  out.precision(10);
  for (const auto& r : rows) {
    const auto& q = r.quality;
    out << r.utterance << ',' << scheme_name(r.scheme) << ',' << q.capacity_bps << ','
        << q.embedded_bits << ',' << q.embedded_frames << ',' << q.snr_db << ','
        << q.mean_weighted_error_clean << ',' << q.mean_weighted_error_stego << ','
        << q.relative_error_increase << ',' << mean_sq_displacement(q) << '\n';
  }
}

void write_histogram_data(std::ostream& out, std::span<const SchemeReport> corpus_means) {
  const auto find = [&](Scheme s) -> const QualityReport* {
    for (const auto& r : corpus_means)
      if (r.scheme == s) return &r.quality;
    return nullptr;
  };
  const Scheme cols[] = {Scheme::kMagic3d, Scheme::kLsb2, Scheme::kParityQim};
  out << "# sq_distance";
  for (Scheme s : cols) out << ' ' << scheme_name(s);
  out << '\n';
  for (std::size_t b = 0; b < kHistogramBuckets; ++b) {
    if (b + 1 == kHistogramBuckets) {
      out << ">27";
    } else {
      out << b;
    }
    for (Scheme s : cols) {
      const auto* q = find(s);
      out << ' ' << (q ? q->displacement_histogram[b] : 0);
    }
    out << '\n';
  }
}

std::vector<RatePoint> snr_rate_curve(std::span<const SpeechFrame> cover,
                                      std::span<const std::uint8_t> payload,
                                      std::span<const double> rates, const CompareConfig& cfg) {
  const std::size_t embeddable = embeddable_count(cover);
  const auto lsps = analyze_frames(cover);
  const auto clean = clean_reference(cover, lsps, cfg);
  const auto bits = bytes_to_bits(payload);

  std::vector<RatePoint> points;
  for (Scheme s : {Scheme::kMagic3d, Scheme::kLsb2, Scheme::kParityQim}) {
    for (double rate : rates) {
      const auto frames = static_cast<std::size_t>(std::floor(rate * static_cast<double>(embeddable) + 1e-9));
      const auto symbols = symbols_from_bits(s, bits, frames);
      const auto q = evaluate_against(clean, s, cover, lsps, symbols, cfg);
      points.push_back({s, rate, q.capacity_bps * rate, q.snr_db});
    }
  }
  return points;
}

void write_rate_curve(std::ostream& out, std::span<const RatePoint> points) {
  std::map<double, std::map<Scheme, double>> table;
  for (const auto& p : points) table[p.embedding_rate][p.scheme] = p.snr_db;
  out << "# embedding_rate magic3d lsb2 parity_qim (SNR dB)\n";
  out.precision(8);
  for (const auto& [rate, row] : table) {
    out << rate;
    for (Scheme s : {Scheme::kMagic3d, Scheme::kLsb2, Scheme::kParityQim}) {
      const auto it = row.find(s);
      out << ' ' << (it == row.end() ? 0.0 : it->second);
    }
    out << '\n';
  }
}

}  // namespace lspstego
