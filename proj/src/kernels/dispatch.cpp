#include <atomic>

#include "lspstego/errors.hpp"
#include "lspstego/kernels.hpp"

namespace lspstego::kernels {

namespace {

constexpr int kNoOverride = -1;
std::atomic<int> g_override{kNoOverride};

bool cpu_has_avx2() {
#if defined(LSPSTEGO_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2: return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced != kNoOverride) return static_cast<Isa>(forced);
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

void set_isa_override(Isa isa) {
  if (!isa_available(isa)) {
    throw ConfigError("ISA " + std::string(isa_name(isa)) + " not available on this CPU/build");
  }
  g_override.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void clear_isa_override() { g_override.store(kNoOverride, std::memory_order_relaxed); }

void weighted_errors(const CodebookPlanes& cb, std::span<const double> target,
                     std::span<const double> weights, std::span<double> out) {
#if defined(LSPSTEGO_WITH_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::weighted_errors(cb, target, weights, out);
#endif
  scalar::weighted_errors(cb, target, weights, out);
}

void autocorrelation(std::span<const double> x, std::span<double> r) {
#if defined(LSPSTEGO_WITH_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::autocorrelation(x, r);
#endif
  scalar::autocorrelation(x, r);
}

}  // namespace lspstego::kernels
