#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lspstego {

inline constexpr int kCubeSide = 8;
inline constexpr int kSubCubeSide = 4;
inline constexpr int kAlphabet = 64;
inline constexpr int kExpandedSide = 256;

/// Coordinate in the periodically expanded 256^3 space.
struct Coord3 {
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const Coord3&, const Coord3&) = default;
};

struct PatternMatch {
  int pattern_id = 0;  // 1..4
  Coord3 coord;
  int sq_distance = 0;
};

/// One failed permutation constraint of a candidate cube.
struct Violation {
  enum class Kind { kPlaneX, kPlaneY, kPlaneZ, kSubCube };
  Kind kind;
  int index;  // plane coordinate, or sub-cube number 0..7 (bit2=x, bit1=y, bit0=z half)

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  static constexpr int kConstraintCount = 32;

  bool ok() const { return violations.empty(); }
  int satisfied() const { return kConstraintCount - static_cast<int>(violations.size()); }
};

/// 8x8x8 cube over the alphabet 0..63 in which every axis-aligned 8x8 plane
/// and every aligned 4x4x4 sub-cube is a permutation of the alphabet.
///
/// Instances are immutable once built. `generate` always yields a valid cube;
/// `from_cells` accepts arbitrary content so that files and test fixtures can
/// be checked with `validate`.
class MagicMatrix {
 public:
  using Cells = std::array<std::uint8_t, kCubeSide * kCubeSide * kCubeSide>;

  /// Seeded construction: fixed digit-rotation base cube, then a keyed
  /// relabeling of the 64 values.
  static MagicMatrix generate(std::uint64_t seed);

  static MagicMatrix from_cells(const Cells& cells, std::uint64_t seed = 0);

  /// Base cube value at (x, y, z), each in [0, 7], before relabeling.
  static int base_value(int x, int y, int z);

  /// Seed-derived permutation of 0..63 (Fisher-Yates over mt19937_64).
  static std::array<std::uint8_t, kAlphabet> keyed_permutation(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  const Cells& cells() const { return cells_; }

  int at(int x, int y, int z) const { return cells_[offset(x, y, z)]; }

  /// Value of the periodic 256^3 expansion. Throws DomainError if a
  /// coordinate is outside [0, 255].
  int expand(const Coord3& c) const;

  /// Applies `perm` to every cell.
  MagicMatrix relabeled(const std::array<std::uint8_t, kAlphabet>& perm) const;

  static constexpr int offset(int x, int y, int z) {
    return (x * kCubeSide + y) * kCubeSide + z;
  }

  friend bool operator==(const MagicMatrix& a, const MagicMatrix& b) {
    return a.cells_ == b.cells_;
  }

 private:
  MagicMatrix(const Cells& cells, std::uint64_t seed) : cells_(cells), seed_(seed) {}

  Cells cells_{};
  std::uint64_t seed_ = 0;
};

ValidationReport validate(const MagicMatrix& m);

/// magic_expand: periodic lookup, m[x mod 8][y mod 8][z mod 8].
inline int magic_expand(const MagicMatrix& m, const Coord3& c) { return m.expand(c); }

/// Locates `key` in each of the four search windows around `origin`:
///   1: x fixed, y and z in [o-3, o+4]
///   2: y fixed, x and z in [o-3, o+4]
///   3: z fixed, x and y in [o-3, o+4]
///   4: the aligned 4x4x4 block containing origin
/// Windows wrap modulo 256; distance uses the minimal per-axis residue.
/// Returns matches ordered by pattern_id. Throws DomainError for an invalid
/// key or origin.
std::array<PatternMatch, 4> search_patterns(const MagicMatrix& m, const Coord3& origin, int key);

/// Signed minimal residue of (to - from) modulo 256, in [-128, 127].
int wrapped_delta(int from, int to);

}  // namespace lspstego
