#include "lspstego/stego_engine.hpp"

#include <string>

#include "lspstego/errors.hpp"

namespace lspstego {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kNone: return "none";
    case Scheme::kMagic3d: return "magic3d";
    case Scheme::kLsb2: return "lsb2";
    case Scheme::kParityQim: return "parity_qim";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::kNone, Scheme::kMagic3d, Scheme::kLsb2, Scheme::kParityQim})
    if (scheme_name(s) == name) return s;
  throw DomainError("unknown scheme '" + std::string(name) + "'");
}

int bits_per_frame(Scheme s) {
  switch (s) {
    case Scheme::kNone: return 0;
    case Scheme::kMagic3d: return 6;
    case Scheme::kLsb2: return 6;
    case Scheme::kParityQim: return 3;
  }
  return 0;
}

double capacity_bps(Scheme s) { return bits_per_frame(s) / kFrameSeconds; }

EmbedRecord embed_frame(const IndexTriple& original, int key, const MagicMatrix& m) {
  const auto matches = search_patterns(m, to_coord(original), key);
  const PatternMatch* best = &matches[0];
  for (const auto& pm : matches)
    if (pm.sq_distance < best->sq_distance) best = &pm;

  EmbedRecord rec;
  rec.original = original;
  rec.chosen = {static_cast<std::uint8_t>(best->coord.x), static_cast<std::uint8_t>(best->coord.y),
                static_cast<std::uint8_t>(best->coord.z)};
  rec.key = key;
  rec.pattern_id = best->pattern_id;
  rec.sq_distance = best->sq_distance;
  return rec;
}

int extract_frame(const IndexTriple& t, const MagicMatrix& m) { return m.expand(to_coord(t)); }

IndexTriple embed_lsb2_baseline(const IndexTriple& original, unsigned bits6) {
  IndexTriple out;
  for (int m = 0; m < kSubVectors; ++m) {
    const unsigned pair = bits6 >> (2 * (kSubVectors - 1 - m)) & 3U;
    out[m] = static_cast<std::uint8_t>((original[m] & ~3U) | pair);
  }
  return out;
}

unsigned extract_lsb2_baseline(const IndexTriple& t) {
  return (t.ix & 3U) << 4 | (t.iy & 3U) << 2 | (t.iz & 3U);
}

IndexTriple embed_parity_qim_baseline(const ErrorTables& tables, unsigned bits3) {
  IndexTriple out;
  for (int m = 0; m < kSubVectors; ++m) {
    const int parity = static_cast<int>(bits3 >> (kSubVectors - 1 - m) & 1U);
    int best = parity;
    for (int l = parity + 2; l < kCodebookSize; l += 2)
      if (tables.e[m][l] < tables.e[m][best]) best = l;
    out[m] = static_cast<std::uint8_t>(best);
  }
  return out;
}

IndexTriple embed_parity_qim_baseline(const QuantTarget& target, unsigned bits3, const Codebook& cb) {
  return embed_parity_qim_baseline(error_tables(target, cb), bits3);
}

unsigned extract_parity_qim_baseline(const IndexTriple& t) {
  return (t.ix & 1U) << 2 | (t.iy & 1U) << 1 | (t.iz & 1U);
}

namespace {

int index_sq_distance(const IndexTriple& a, const IndexTriple& b) {
  int s = 0;
  for (int m = 0; m < kSubVectors; ++m) {
    const int d = int{a[m]} - int{b[m]};
    s += d * d;
  }
  return s;
}

}  // namespace

std::vector<FrameOutcome> run_scheme(Scheme scheme, std::span<const LspVector> cover,
                                     std::span<const int> symbols, const MagicMatrix& m,
                                     const Codebook& cb, const QuantConfig& cfg) {
  QuantState state(cfg);
  std::vector<FrameOutcome> out;
  out.reserve(cover.size());
  for (std::size_t f = 0; f < cover.size(); ++f) {
    const auto tables = error_tables(prepare_target(cover[f], state), cb);
    FrameOutcome fo;
    fo.best = best_indices(tables);
    fo.chosen = fo.best;
    const int symbol = f < symbols.size() ? symbols[f] : -1;
    if (symbol >= 0 && scheme != Scheme::kNone) {
      fo.symbol = symbol;
      switch (scheme) {
        case Scheme::kMagic3d: {
          const auto rec = embed_frame(fo.best, symbol, m);
          fo.chosen = rec.chosen;
          fo.pattern_id = rec.pattern_id;
          fo.sq_distance = rec.sq_distance;
          break;
        }
        case Scheme::kLsb2:
          fo.chosen = embed_lsb2_baseline(fo.best, static_cast<unsigned>(symbol));
          break;
        case Scheme::kParityQim:
          fo.chosen = embed_parity_qim_baseline(tables, static_cast<unsigned>(symbol));
          break;
        case Scheme::kNone: break;
      }
    }
    fo.best_error = tables.at(fo.best);
    fo.chosen_error = tables.at(fo.chosen);
    if (scheme != Scheme::kMagic3d) fo.sq_distance = index_sq_distance(fo.best, fo.chosen);
    fo.decoded = dequantize(fo.chosen, state, cb);
    out.push_back(fo);
  }
  return out;
}

EmbedResult embed_stream(Scheme scheme, std::span<const LspVector> cover,
                         std::span<const std::uint8_t> payload, const MagicMatrix& m,
                         const Codebook& cb, const QuantConfig& cfg, std::size_t embeddable_frames) {
  const std::size_t available = std::min(embeddable_frames, cover.size());
  const std::size_t required = frames_required(payload.size(), scheme);
  if (required > available) throw CapacityError(required, available);

  const auto symbols = frame_payload(payload, scheme);
  EmbedResult res;
  res.frames = run_scheme(scheme, cover, symbols, m, cb, cfg);
  res.indices.reserve(res.frames.size());
  for (std::size_t f = 0; f < res.frames.size(); ++f) {
    const auto& fo = res.frames[f];
    res.indices.push_back(fo.chosen);
    if (fo.symbol < 0 || scheme != Scheme::kMagic3d) continue;
    EmbedRecord rec;
    rec.frame_no = f;
    rec.original = fo.best;
    rec.chosen = fo.chosen;
    rec.key = fo.symbol;
    rec.pattern_id = fo.pattern_id;
    rec.sq_distance = fo.sq_distance;
    res.records.push_back(rec);
  }
  return res;
}

EmbedResult embed_stream(std::span<const LspVector> cover, std::span<const std::uint8_t> payload,
                         const MagicMatrix& m, const Codebook& cb, const QuantConfig& cfg,
                         std::size_t embeddable_frames) {
  return embed_stream(Scheme::kMagic3d, cover, payload, m, cb, cfg, embeddable_frames);
}

}  // namespace lspstego
