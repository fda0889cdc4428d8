#pragma once

// Data-parallel inner loops of the analysis/quantization path.
//
// Every kernel has a scalar reference in `kernels::scalar` and, where the
// build and CPU allow, an AVX2 variant in `kernels::avx2`. Variants perform
// the same floating-point operations in the same order per output element
// (vectorization runs across independent outputs, never across a reduction),
// so their results are bit-identical and the dispatcher can pick either
// without changing quantizer decisions.

#include <cstddef>
#include <span>
#include <string_view>

namespace lspstego::kernels {

/// Sub-codebook laid out structure-of-arrays: `planes[d * entries + l]` is
/// component d of entry l.
struct CodebookPlanes {
  const double* planes = nullptr;
  std::size_t dim = 0;
  std::size_t entries = 0;
};

using WeightedErrorsFn = void (*)(const CodebookPlanes& cb, std::span<const double> target,
                                  std::span<const double> weights, std::span<double> out);

/// r[k] = sum_{n=k}^{N-1} x[n] * x[n-k] for k in [0, r.size()).
using AutocorrelationFn = void (*)(std::span<const double> x, std::span<double> r);

namespace scalar {
/// out[l] = sum_d w[d] * (t[d] - c[d][l])^2, summed in increasing d.
void weighted_errors(const CodebookPlanes& cb, std::span<const double> target,
                     std::span<const double> weights, std::span<double> out);
void autocorrelation(std::span<const double> x, std::span<double> r);
}  // namespace scalar

#if defined(LSPSTEGO_WITH_AVX2)
namespace avx2 {
void weighted_errors(const CodebookPlanes& cb, std::span<const double> target,
                     std::span<const double> weights, std::span<double> out);
void autocorrelation(std::span<const double> x, std::span<double> r);
}  // namespace avx2
#endif

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// True if this binary carries the variant and the running CPU supports it.
bool isa_available(Isa isa);

/// Best available ISA, unless overridden.
Isa active_isa();

/// Forces a specific ISA (must be available); used by tests and benchmarks.
void set_isa_override(Isa isa);
void clear_isa_override();

void weighted_errors(const CodebookPlanes& cb, std::span<const double> target,
                     std::span<const double> weights, std::span<double> out);
void autocorrelation(std::span<const double> x, std::span<double> r);

}  // namespace lspstego::kernels
