#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "matpow/matrix.hpp"

namespace matpow {

enum class FamilyKind {
  PositiveStochastic,
  PhaseTwisted2x2,
  ComplexOffDiagonal,
  ComplexDiagonal,
  NegativeEntry,
  Substochastic,
  AllNegative,
};

inline constexpr double kDefaultMinModulus = 0.01;
// At least one Substochastic column sums to at most 1 - this.
inline constexpr double kSubstochasticMargin = 0.05;
// Rotation angles for the complex families stay this far from 0 (mod 2*pi).
inline constexpr double kRotationMargin = 0.7853981633974483;  // pi / 4
// Sampled angles closer than this to pi are re-drawn.
inline constexpr double kExcludedPiGap = 1e-6;

std::string_view family_name(FamilyKind k);
std::optional<FamilyKind> parse_family(std::string_view name);
std::span<const FamilyKind> all_families();

struct MatrixFamily {
  FamilyKind kind = FamilyKind::PositiveStochastic;
  std::size_t d = 2;
  double min_modulus = kDefaultMinModulus;

  /// Throws PreconditionError for infeasible parameters.
  void validate() const;
};

/// Seeded uniform sampler over std::mt19937_64.
///
/// The engine and std::seed_seq are fully specified by the standard, and the
/// conversions below use only integer shifts and exact scaling, so a given
/// seed gives bit-identical draws on every conforming platform.
class Sampler {
 public:
  explicit Sampler(std::span<const std::uint32_t> seed_words);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}.
  std::size_t index(std::size_t n);
  /// Uniform on the shifted simplex {m : m_i >= floor, sum m = total}.
  std::vector<double> simplex(std::size_t d, double floor, double total);
  /// Uniform on [margin, 2*pi - margin], re-drawn within kExcludedPiGap of pi.
  double angle_avoiding_pi(double margin);

 private:
  std::mt19937_64 engine_;
};

/// Deterministic in (family, seed). The result is checked against the
/// family contract before it is returned.
ComplexMatrix generate(const MatrixFamily& family, std::uint64_t seed);

/// Throws std::logic_error if `m` does not satisfy the family's contract.
void check_family_contract(const MatrixFamily& family, const ComplexMatrix& m);

}  // namespace matpow
