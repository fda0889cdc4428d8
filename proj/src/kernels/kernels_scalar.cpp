#include "lspstego/kernels.hpp"

namespace lspstego::kernels::scalar {

void weighted_errors(const CodebookPlanes& cb, std::span<const double> target,
                     std::span<const double> weights, std::span<double> out) {
  for (std::size_t l = 0; l < cb.entries; ++l) {
    double acc = 0.0;
    for (std::size_t d = 0; d < cb.dim; ++d) {
      const double diff = target[d] - cb.planes[d * cb.entries + l];
      acc = acc + weights[d] * diff * diff;
    }
    out[l] = acc;
  }
}

void autocorrelation(std::span<const double> x, std::span<double> r) {
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < r.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = k; i < n; ++i) acc = acc + x[i] * x[i - k];
    r[k] = acc;
  }
}

}  // namespace lspstego::kernels::scalar
