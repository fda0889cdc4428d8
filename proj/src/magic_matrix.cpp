#include "lspstego/magic_matrix.hpp"

#include <bitset>
#include <numeric>

#include "lspstego/errors.hpp"
#include "lspstego/rng.hpp"

namespace lspstego {

namespace {

int wrap256(int v) { return ((v % kExpandedSide) + kExpandedSide) % kExpandedSide; }

void check_coord(const Coord3& c) {
  auto bad = [](int v) { return v < 0 || v >= kExpandedSide; };
  if (bad(c.x) || bad(c.y) || bad(c.z)) {
    throw DomainError("coordinate (" + std::to_string(c.x) + "," + std::to_string(c.y) + "," +
                      std::to_string(c.z) + ") outside [0,255]");
  }
}

}  // namespace

std::string Violation::describe() const {
  switch (kind) {
    case Kind::kPlaneX: return "plane x=" + std::to_string(index);
    case Kind::kPlaneY: return "plane y=" + std::to_string(index);
    case Kind::kPlaneZ: return "plane z=" + std::to_string(index);
    case Kind::kSubCube:
      return "sub-cube (" + std::to_string((index >> 2 & 1) * 4) + "," +
             std::to_string((index >> 1 & 1) * 4) + "," + std::to_string((index & 1) * 4) + ")";
  }
  return "?";
}

// Each coordinate splits into a half h = c / 4 and a position l = c % 4. The
// three base-4 digits of the value are cyclic shifts of the positions by the
// halves:
//   d2 = x_l + 2*y_h + z_h + x_h
//   d1 = y_l + 2*x_h + z_h + y_h
//   d0 = z_l + 2*x_h + y_h + z_h      (all mod 4)
// With x fixed, 2*y_h + z_h ranges over 0..3, so d2 identifies (y_h, z_h) and
// d1, d0 then identify y_l, z_l; the y and z planes follow the same way via
// d1 and d0. Inside a sub-cube the halves are constant and the digits are
// shifted copies of the positions.
int MagicMatrix::base_value(int x, int y, int z) {
  const int xh = x / 4, xl = x % 4;
  const int yh = y / 4, yl = y % 4;
  const int zh = z / 4, zl = z % 4;
  const int d2 = (xl + 2 * yh + zh + xh) % 4;
  const int d1 = (yl + 2 * xh + zh + yh) % 4;
  const int d0 = (zl + 2 * xh + yh + zh) % 4;
  return 16 * d2 + 4 * d1 + d0;
}

std::array<std::uint8_t, kAlphabet> MagicMatrix::keyed_permutation(std::uint64_t seed) {
  std::array<std::uint8_t, kAlphabet> perm{};
  std::iota(perm.begin(), perm.end(), std::uint8_t{0});
  Rng rng(seed);
  for (int i = kAlphabet - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

MagicMatrix MagicMatrix::generate(std::uint64_t seed) {
  const auto perm = keyed_permutation(seed);
  Cells cells{};
  for (int x = 0; x < kCubeSide; ++x)
    for (int y = 0; y < kCubeSide; ++y)
      for (int z = 0; z < kCubeSide; ++z) cells[offset(x, y, z)] = perm[base_value(x, y, z)];
  return MagicMatrix(cells, seed);
}

MagicMatrix MagicMatrix::from_cells(const Cells& cells, std::uint64_t seed) {
  return MagicMatrix(cells, seed);
}

int MagicMatrix::expand(const Coord3& c) const {
  check_coord(c);
  return at(c.x % kCubeSide, c.y % kCubeSide, c.z % kCubeSide);
}

MagicMatrix MagicMatrix::relabeled(const std::array<std::uint8_t, kAlphabet>& perm) const {
  Cells out{};
  for (std::size_t i = 0; i < cells_.size(); ++i) out[i] = perm[cells_[i] % kAlphabet];
  return MagicMatrix(out, seed_);
}

ValidationReport validate(const MagicMatrix& m) {
  ValidationReport report;
  using Kind = Violation::Kind;

  auto check = [&](Kind kind, int index, auto&& cell) {
    std::bitset<kAlphabet> seen;
    bool good = true;
    for (int a = 0; a < kCubeSide; ++a)
      for (int b = 0; b < kCubeSide; ++b) {
        const int v = cell(a, b);
        if (v < 0 || v >= kAlphabet || seen.test(v)) {
          good = false;
        } else {
          seen.set(v);
        }
      }
    if (!good) report.violations.push_back({kind, index});
  };

  for (int i = 0; i < kCubeSide; ++i)
    check(Kind::kPlaneX, i, [&](int a, int b) { return m.at(i, a, b); });
  for (int i = 0; i < kCubeSide; ++i)
    check(Kind::kPlaneY, i, [&](int a, int b) { return m.at(a, i, b); });
  for (int i = 0; i < kCubeSide; ++i)
    check(Kind::kPlaneZ, i, [&](int a, int b) { return m.at(a, b, i); });

  // The 64 cells of a 4x4x4 block, walked as an 8x8 grid.
  for (int q = 0; q < 8; ++q) {
    const int x0 = (q >> 2 & 1) * 4, y0 = (q >> 1 & 1) * 4, z0 = (q & 1) * 4;
    check(Kind::kSubCube, q, [&](int a, int b) {
      const int cell = a * kCubeSide + b;  // 0..63
      return m.at(x0 + cell / 16, y0 + cell / 4 % 4, z0 + cell % 4);
    });
  }
  return report;
}

int wrapped_delta(int from, int to) {
  int d = wrap256(to - from);
  if (d >= kExpandedSide / 2) d -= kExpandedSide;
  return d;
}

std::array<PatternMatch, 4> search_patterns(const MagicMatrix& m, const Coord3& origin, int key) {
  check_coord(origin);
  if (key < 0 || key >= kAlphabet) throw DomainError("key " + std::to_string(key) + " outside [0,63]");

  auto make = [&](int id, Coord3 c) {
    const int dx = wrapped_delta(origin.x, c.x);
    const int dy = wrapped_delta(origin.y, c.y);
    const int dz = wrapped_delta(origin.z, c.z);
    return PatternMatch{id, c, dx * dx + dy * dy + dz * dz};
  };

  // Scans a window of 64 coordinates; a valid cube puts the key there exactly once.
  auto scan = [&](int id, auto&& coord_of) {
    int found = 0;
    Coord3 hit{};
    for (int a = 0; a < kCubeSide; ++a)
      for (int b = 0; b < kCubeSide; ++b) {
        const Coord3 c = coord_of(a, b);
        if (m.at(c.x % kCubeSide, c.y % kCubeSide, c.z % kCubeSide) == key) {
          hit = c;
          ++found;
        }
      }
    if (found != 1) {
      throw DomainError("search pattern " + std::to_string(id) + " found " +
                        std::to_string(found) + " matches; matrix is not valid");
    }
    return make(id, hit);
  };

  auto around = [](int centre, int i) { return wrap256(centre - 3 + i); };

  std::array<PatternMatch, 4> out{};
  out[0] = scan(1, [&](int a, int b) {
    return Coord3{origin.x, around(origin.y, a), around(origin.z, b)};
  });
  out[1] = scan(2, [&](int a, int b) {
    return Coord3{around(origin.x, a), origin.y, around(origin.z, b)};
  });
  out[2] = scan(3, [&](int a, int b) {
    return Coord3{around(origin.x, a), around(origin.y, b), origin.z};
  });
  const int bx = origin.x / 4 * 4, by = origin.y / 4 * 4, bz = origin.z / 4 * 4;
  out[3] = scan(4, [&](int a, int b) {
    const int cell = a * kCubeSide + b;
    return Coord3{bx + cell / 16, by + cell / 4 % 4, bz + cell % 4};
  });
  return out;
}

}  // namespace lspstego
