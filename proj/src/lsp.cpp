#include "lspstego/lsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lspstego/errors.hpp"

namespace lspstego {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kHalf = kLpcOrder / 2;  // roots per polynomial
constexpr int kGridPoints = 4096;

using SymPoly = std::array<double, kLpcOrder + 1>;

/// Chebyshev-series form of a symmetric degree-10 polynomial on the unit
/// circle: e^{j5w} F(e^{jw}) = sum_k c_k T_k(cos w).
std::array<double, kHalf + 1> chebyshev_form(const SymPoly& f) {
  std::array<double, kHalf + 1> c{};
  c[0] = f[kHalf];
  for (int k = 1; k <= kHalf; ++k) c[k] = 2.0 * f[kHalf - k];
  return c;
}

double clenshaw(const std::array<double, kHalf + 1>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = kHalf; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

const std::vector<double>& omega_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(kGridPoints + 1);
    for (int i = 0; i <= kGridPoints; ++i) g[i] = kPi * i / kGridPoints;
    return g;
  }();
  return grid;
}

/// Sign changes of the series over (0, pi), refined by bisection on w.
std::vector<double> roots_on_circle(const std::array<double, kHalf + 1>& c) {
  const auto& grid = omega_grid();
  std::vector<double> roots;
  double prev_w = grid[0];
  double prev_v = clenshaw(c, std::cos(prev_w));
  for (int i = 1; i <= kGridPoints; ++i) {
    const double w = grid[i];
    const double v = clenshaw(c, std::cos(w));
    if (v == 0.0) {
      if (i < kGridPoints) roots.push_back(w);
    } else if ((prev_v < 0.0) != (v < 0.0) && prev_v != 0.0) {
      double lo = prev_w, hi = w, vlo = prev_v;
      for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double vm = clenshaw(c, std::cos(mid));
        if (vm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((vm < 0.0) == (vlo < 0.0)) {
          lo = mid;
          vlo = vm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_w = w;
    prev_v = v;
  }
  return roots;
}

/// prod over the given angles of (1 - 2 cos(w) z^-1 + z^-2).
SymPoly product_of_sections(const LspVector& p, int first) {
  std::vector<double> poly{1.0};
  for (int i = first; i < kLpcOrder; i += 2) {
    const double b = -2.0 * std::cos(p[i]);
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k];
      next[k + 1] += b * poly[k];
      next[k + 2] += poly[k];
    }
    poly = std::move(next);
  }
  SymPoly out{};
  std::copy(poly.begin(), poly.end(), out.begin());
  return out;
}

}  // namespace

LspVector uniform_lsp() {
  LspVector p;
  for (int k = 0; k < kLpcOrder; ++k) p[k] = (k + 1) * kPi / (kLpcOrder + 1);
  return p;
}

bool is_valid_lsp(const LspVector& p) {
  if (!(p[0] > 0.0) || !(p[kLpcOrder - 1] < kPi)) return false;
  for (int i = 1; i < kLpcOrder; ++i)
    if (!(p[i] > p[i - 1])) return false;
  return true;
}

LspVector lpc_to_lsp(const LpcCoeffs& lpc) {
  if (!lpc.stable) throw ConversionError("LPC filter flagged unstable");

  // A(z) = 1 - sum a_j z^-j, padded with A[11] = 0.
  std::array<double, kLpcOrder + 2> A{};
  A[0] = 1.0;
  for (int j = 1; j <= kLpcOrder; ++j) A[j] = -lpc.a[j - 1];

  // P = A + z^-11 A(1/z) has a root at z = -1, Q = A - z^-11 A(1/z) at z = 1.
  SymPoly pp{}, qq{};
  double prev_p = 0.0, prev_q = 0.0;
  for (int i = 0; i <= kLpcOrder; ++i) {
    const double pi = A[i] + A[kLpcOrder + 1 - i];
    const double qi = A[i] - A[kLpcOrder + 1 - i];
    pp[i] = pi - prev_p;
    qq[i] = qi + prev_q;
    prev_p = pp[i];
    prev_q = qq[i];
  }

  const auto rp = roots_on_circle(chebyshev_form(pp));
  const auto rq = roots_on_circle(chebyshev_form(qq));
  if (rp.size() != kHalf || rq.size() != kHalf) {
    throw ConversionError("LSP root search isolated " + std::to_string(rp.size()) + "+" +
                          std::to_string(rq.size()) + " roots, expected 5+5");
  }

  LspVector out;
  for (int i = 0; i < kHalf; ++i) {
    out[2 * i] = rp[i];
    out[2 * i + 1] = rq[i];
  }
  if (!is_valid_lsp(out)) throw ConversionError("LSP roots do not interlace");
  return out;
}

LpcCoeffs lsp_to_lpc(const LspVector& p) {
  if (!is_valid_lsp(p)) throw DomainError("LSP vector not strictly increasing in (0, pi)");

  const SymPoly pp = product_of_sections(p, 0);
  const SymPoly qq = product_of_sections(p, 1);

  // Restore the trivial roots: P = P'(1 + z^-1), Q = Q'(1 - z^-1); A = (P + Q) / 2.
  LpcCoeffs out;
  for (int j = 1; j <= kLpcOrder; ++j) {
    const double pj = pp[j] + pp[j - 1];
    const double qj = qq[j] - qq[j - 1];
    out.a[j - 1] = -0.5 * (pj + qj);
  }
  out.stable = is_minimum_phase(out.a);
  return out;
}

WeightMatrix weight_matrix(const LspVector& p) {
  for (int i = 1; i < kLpcOrder; ++i) {
    if (!(p[i] > p[i - 1])) {
      throw DomainError("weight_matrix: LSP not strictly increasing at position " +
                        std::to_string(i + 1));
    }
  }
  WeightMatrix w;
  w.w[0] = 1.0 / (p[1] - p[0]);
  w.w[kLpcOrder - 1] = 1.0 / (p[kLpcOrder - 1] - p[kLpcOrder - 2]);
  for (int j = 1; j < kLpcOrder - 1; ++j) {
    w.w[j] = 1.0 / std::min(p[j] - p[j - 1], p[j + 1] - p[j]);
  }
  return w;
}

LspVector repair_lsp(LspVector p, double min_gap) {
  std::sort(p.p.begin(), p.p.end());
  p[0] = std::max(p[0], min_gap);
  for (int i = 1; i < kLpcOrder; ++i) p[i] = std::max(p[i], p[i - 1] + min_gap);
  if (p[kLpcOrder - 1] > kPi - min_gap) {
    p[kLpcOrder - 1] = kPi - min_gap;
    for (int i = kLpcOrder - 2; i >= 0; --i) p[i] = std::min(p[i], p[i + 1] - min_gap);
  }
  return p;
}

}  // namespace lspstego
