#include <immintrin.h>

#include <vector>

#include "lspstego/kernels.hpp"

namespace lspstego::kernels::avx2 {

// Four codebook entries per vector. Per lane the sequence is
// acc = acc + (w * diff) * diff over d ascending, as in the scalar loop.
void weighted_errors(const CodebookPlanes& cb, std::span<const double> target,
                     std::span<const double> weights, std::span<double> out) {
  const std::size_t entries = cb.entries;
  const std::size_t vec_end = entries / 4 * 4;
  std::size_t l = 0;
  for (; l < vec_end; l += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < cb.dim; ++d) {
      const __m256d c = _mm256_loadu_pd(cb.planes + d * entries + l);
      const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(target[d]), c);
      const __m256d wd = _mm256_mul_pd(_mm256_set1_pd(weights[d]), diff);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(wd, diff));
    }
    _mm256_storeu_pd(out.data() + l, acc);
  }
  for (; l < entries; ++l) {
    double acc = 0.0;
    for (std::size_t d = 0; d < cb.dim; ++d) {
      const double diff = target[d] - cb.planes[d * entries + l];
      acc = acc + weights[d] * diff * diff;
    }
    out[l] = acc;
  }
}

// Four lags per vector. Lane j accumulates x[i] * x[i - k0 - j] for i
// ascending; a zero prefix stands in for negative indices, and adding the
// resulting +0.0 products leaves the running sum unchanged.
void autocorrelation(std::span<const double> x, std::span<double> r) {
  constexpr std::size_t kPad = 3;
  const std::size_t n = x.size();
  std::vector<double> padded(n + kPad, 0.0);
  for (std::size_t i = 0; i < n; ++i) padded[i + kPad] = x[i];

  std::size_t k0 = 0;
  for (; k0 + 4 <= r.size(); k0 += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = k0; i < n; ++i) {
      // padded[i - k0 + kPad - j] for j = 0..3, i.e. a reversed 4-load.
      const __m256d fwd = _mm256_loadu_pd(padded.data() + (i - k0));
      const __m256d lagged = _mm256_permute4x64_pd(fwd, 0x1B);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(x[i]), lagged));
    }
    _mm256_storeu_pd(r.data() + k0, acc);
  }
  for (std::size_t k = k0; k < r.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = k; i < n; ++i) acc = acc + x[i] * x[i - k];
    r[k] = acc;
  }
}

}  // namespace lspstego::kernels::avx2
