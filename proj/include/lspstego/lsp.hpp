#pragma once

#include <array>
#include <cstddef>

#include "lspstego/lpc.hpp"

namespace lspstego {

/// Ten line spectral frequencies in radians, strictly increasing in (0, pi).
struct LspVector {
  std::array<double, kLpcOrder> p{};

  double& operator[](std::size_t i) { return p[i]; }
  double operator[](std::size_t i) const { return p[i]; }
  friend bool operator==(const LspVector&, const LspVector&) = default;
};

/// Diagonal of the error weighting matrix.
struct WeightMatrix {
  std::array<double, kLpcOrder> w{};
};

/// {k*pi/11 : k = 1..10}, the LSPs of a flat spectrum.
LspVector uniform_lsp();

bool is_valid_lsp(const LspVector& p);

/// Roots of the symmetric and antisymmetric polynomials built from A(z),
/// interleaved. Throws ConversionError if the filter is flagged unstable or
/// the root search does not isolate ten interlaced frequencies.
LspVector lpc_to_lsp(const LpcCoeffs& lpc);

/// Polynomial reconstruction from the P/Q roots. Throws DomainError on a
/// non-increasing or out-of-range vector. `stable` is computed by step-down.
LpcCoeffs lsp_to_lpc(const LspVector& p);

/// w_1 = 1/(p2-p1), w_10 = 1/(p10-p9), interior 1/min(left gap, right gap).
/// Throws DomainError unless the input is strictly increasing.
WeightMatrix weight_matrix(const LspVector& p);

/// Sorts and enforces a minimum spacing (also from 0 and pi).
LspVector repair_lsp(LspVector p, double min_gap = 1e-3);

}  // namespace lspstego
