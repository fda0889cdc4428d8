#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lspstego/corpus.hpp"
#include "lspstego/errors.hpp"
#include "lspstego/lsp.hpp"
#include "lspstego/rng.hpp"

using namespace lspstego;

namespace {

constexpr double kPi = std::numbers::pi;

LspVector random_lsp(Rng& rng, double min_gap = 0.01) {
  // Sorted uniforms, then spread apart so neighbours differ by at least min_gap.
  std::array<double, 10> u{};
  for (double& v : u) v = rng.uniform();
  std::sort(u.begin(), u.end());
  LspVector p;
  const double usable = kPi - 11 * min_gap;
  for (int i = 0; i < 10; ++i) p[i] = min_gap * (i + 1) + usable * u[i];
  return p;
}

}  // namespace

TEST_SUITE("lsp") {
  TEST_CASE("flat spectrum maps to uniformly spaced LSPs") {
    const auto p = lpc_to_lsp(LpcCoeffs{});
    for (int k = 0; k < 10; ++k) CHECK(p[k] == doctest::Approx((k + 1) * kPi / 11).epsilon(1e-12));
  }

  TEST_CASE("uniform LSPs map back to the flat predictor") {
    const auto lpc = lsp_to_lpc(uniform_lsp());
    CHECK(lpc.stable);
    for (double a : lpc.a) CHECK(std::abs(a) < 1e-10);
  }

  TEST_CASE("LPC -> LSP -> LPC round trip over 1000 random stable filters") {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto lpc = random_stable_lpc(seed, 0.9);
      const auto p = lpc_to_lsp(lpc);
      REQUIRE(is_valid_lsp(p));
      const auto back = lsp_to_lpc(p);
      CHECK(back.stable);
      for (int j = 0; j < 10; ++j) worst = std::max(worst, std::abs(back.a[j] - lpc.a[j]));
    }
    CHECK(worst < 1e-6);
  }

  TEST_CASE("LSP -> LPC -> LSP round trip and stability on random valid vectors") {
    Rng rng(17);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const auto p = random_lsp(rng);
      const auto lpc = lsp_to_lpc(p);
      REQUIRE(lpc.stable);
      const auto q = lpc_to_lsp(lpc);
      for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(q[i] - p[i]));
    }
    CHECK(worst < 1e-6);
  }

  TEST_CASE("conversion errors") {
    LpcCoeffs unstable;
    unstable.stable = false;
    CHECK_THROWS_AS(lpc_to_lsp(unstable), ConversionError);

    auto p = uniform_lsp();
    p[4] = p[3];
    CHECK_THROWS_AS(lsp_to_lpc(p), DomainError);
    auto q = uniform_lsp();
    q[9] = 3.5;
    CHECK_THROWS_AS(lsp_to_lpc(q), DomainError);
  }

  TEST_CASE("weight matrix") {
    SUBCASE("equal gaps give equal weights") {
      const auto w = weight_matrix(uniform_lsp());
      for (double v : w.w) CHECK(v == doctest::Approx(11.0 / kPi));
    }
    SUBCASE("interior weight uses the smaller neighbouring gap") {
      LspVector p;
      p.p = {0.1, 0.2, 0.4, 0.7, 1.0, 1.4, 1.8, 2.2, 2.6, 3.0};
      const auto w = weight_matrix(p);
      CHECK(w.w[0] == doctest::Approx(10.0));  // 1/(0.2-0.1)
      CHECK(w.w[1] == doctest::Approx(10.0));  // 1/min(0.1, 0.2)
      CHECK(w.w[2] == doctest::Approx(5.0));   // 1/min(0.2, 0.3)
      CHECK(w.w[9] == doctest::Approx(2.5));   // 1/(3.0-2.6)
    }
    SUBCASE("repeated values are rejected") {
      auto p = uniform_lsp();
      p[6] = p[5];
      CHECK_THROWS_AS(weight_matrix(p), DomainError);
    }
    SUBCASE("weights positive on random valid vectors") {
      Rng rng(4);
      for (int t = 0; t < 200; ++t)
        for (double v : weight_matrix(random_lsp(rng, 1e-4)).w) CHECK(v > 0.0);
    }
  }

  TEST_CASE("repair restores ordering and spacing") {
    LspVector p;
    p.p = {0.5, 0.3, 0.3, 0.0, 1.0, 1.0005, 2.0, 2.5, 3.2, 3.1};
    const auto r = repair_lsp(p);
    CHECK(is_valid_lsp(r));
    for (int i = 1; i < 10; ++i) CHECK(r[i] - r[i - 1] >= 1e-3 - 1e-15);
    CHECK(r[0] >= 1e-3);
    CHECK(r[9] <= kPi - 1e-3 + 1e-15);
    CHECK(repair_lsp(uniform_lsp()) == uniform_lsp());
  }
}
