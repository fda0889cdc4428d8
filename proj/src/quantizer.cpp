#include "lspstego/quantizer.hpp"

namespace lspstego {

QuantTarget prepare_target(const LspVector& p_prime, const QuantState& state) {
  QuantTarget t;
  t.weights = weight_matrix(p_prime);
  for (int i = 0; i < kLpcOrder; ++i) {
    const double p = p_prime[i] - state.dc[i];
    const double predicted = state.predictor * (state.prev_decoded[i] - state.dc[i]);
    t.residual[i] = p - predicted;
  }
  return t;
}

ErrorTables error_tables(const QuantTarget& target, const Codebook& cb) {
  ErrorTables tables;
  for (int m = 0; m < kSubVectors; ++m) {
    const std::size_t off = kSubOffsets[m], dim = kSubDims[m];
    kernels::weighted_errors(cb.sub(m).planes(),
                             std::span<const double>(target.residual).subspan(off, dim),
                             std::span<const double>(target.weights.w).subspan(off, dim),
                             tables.e[m]);
  }
  return tables;
}

int argmin_index(std::span<const double, kCodebookSize> errors) {
  int best = 0;
  for (int l = 1; l < kCodebookSize; ++l)
    if (errors[l] < errors[best]) best = l;
  return best;
}

IndexTriple best_indices(const ErrorTables& tables) {
  IndexTriple t;
  for (int m = 0; m < kSubVectors; ++m) t[m] = static_cast<std::uint8_t>(argmin_index(tables.e[m]));
  return t;
}

LspVector reconstruct(const IndexTriple& t, const QuantState& state, const Codebook& cb) {
  LspVector out;
  for (int m = 0; m < kSubVectors; ++m) {
    const auto cw = cb.sub(m).entry(t[m]);
    for (int d = 0; d < kSubDims[m]; ++d) {
      const int i = kSubOffsets[m] + d;
      out[i] = state.predictor * (state.prev_decoded[i] - state.dc[i]) + cw[d] + state.dc[i];
    }
  }
  return repair_lsp(out);
}

QuantResult quantize(const LspVector& p_prime, QuantState& state, const Codebook& cb) {
  const auto tables = error_tables(prepare_target(p_prime, state), cb);
  QuantResult r;
  r.indices = best_indices(tables);
  for (int m = 0; m < kSubVectors; ++m) r.sub_errors[m] = tables.e[m][r.indices[m]];
  r.decoded = reconstruct(r.indices, state, cb);
  state.prev_decoded = r.decoded;
  return r;
}

LspVector dequantize(const IndexTriple& t, QuantState& state, const Codebook& cb) {
  const LspVector decoded = reconstruct(t, state, cb);
  state.prev_decoded = decoded;
  return decoded;
}

}  // namespace lspstego
