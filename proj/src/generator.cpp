#include "matpow/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "matpow/classifier.hpp"
#include "matpow/transforms.hpp"

namespace matpow {
namespace {

constexpr std::array<FamilyKind, 7> kFamilies = {
    FamilyKind::PositiveStochastic, FamilyKind::PhaseTwisted2x2, FamilyKind::ComplexOffDiagonal,
    FamilyKind::ComplexDiagonal,    FamilyKind::NegativeEntry,   FamilyKind::Substochastic,
    FamilyKind::AllNegative,
};

constexpr std::array<std::string_view, 7> kFamilyNames = {
    "positive-stochastic", "phase-twisted-2x2", "complex-off-diagonal", "complex-diagonal",
    "negative-entry",      "substochastic",     "all-negative",
};

constexpr double kContractTol = 1e-12;

ComplexMatrix positive_stochastic(Sampler& rng, std::size_t d, double floor) {
  ComplexMatrix m(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::vector<double> col = rng.simplex(d, floor, 1.0);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

// Rotating a small entry barely moves the spectral radius off 1, which
// makes the power sequence decay too slowly to classify numerically. The
// largest eligible entry is rotated instead.
void rotate_largest(ComplexMatrix& m, Sampler& rng, bool diagonal) {
  std::size_t bi = 0;
  std::size_t bj = diagonal ? 0 : 1;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if ((i == j) != diagonal) continue;
      if (std::abs(m(i, j)) > std::abs(m(bi, bj))) {
        bi = i;
        bj = j;
      }
    }
  }
  m(bi, bj) *= std::polar(1.0, rng.angle_avoiding_pi(kRotationMargin));
}

// Sign patterns s(i,j) = g * t(i) * t(j) make the matrix diagonally similar
// to +-|B| and leave a unit-modulus eigenvalue in place.
bool diagonal_sign_pattern(const std::vector<int>& s, std::size_t d) {
  const int g = s[0];
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const int ti = g * s[i * d];      // t(i) * t(0) with t(0) = 1
      const int tj = g * s[j * d];
      if (s[i * d + j] != g * ti * tj) return false;
    }
  }
  return true;
}

ComplexMatrix negative_entry(Sampler& rng, std::size_t d, double floor) {
  ComplexMatrix m = positive_stochastic(rng, d, floor);
  std::vector<int> signs(d * d);
  for (;;) {
    bool any = false;
    for (int& s : signs) {
      s = rng.uniform() < 0.5 ? -1 : 1;
      any = any || s < 0;
    }
    if (any && !diagonal_sign_pattern(signs, d)) break;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) *= static_cast<double>(signs[i * d + j]);
  return m;
}

ComplexMatrix substochastic(Sampler& rng, std::size_t d, double floor) {
  ComplexMatrix m(d);
  const std::size_t short_col = rng.index(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double total = j == short_col ? rng.uniform(0.5, 1.0 - kSubstochasticMargin)
                                        : rng.uniform(0.5, 1.0);
    const std::vector<double> col = rng.simplex(d, floor * total, total);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

void fail(const MatrixFamily& f, const std::string& what) {
  throw std::logic_error(std::string(family_name(f.kind)) + " contract violated: " + what);
}

}  // namespace

std::string_view family_name(FamilyKind k) { return kFamilyNames[static_cast<std::size_t>(k)]; }

std::optional<FamilyKind> parse_family(std::string_view name) {
  for (std::size_t k = 0; k < kFamilyNames.size(); ++k)
    if (kFamilyNames[k] == name) return kFamilies[k];
  return std::nullopt;
}

std::span<const FamilyKind> all_families() { return kFamilies; }

void MatrixFamily::validate() const {
  if (d == 0) throw PreconditionError("family dimension must be at least 1");
  if (!(min_modulus > 0.0)) throw PreconditionError("min_modulus must be positive");
  if (!(min_modulus * static_cast<double>(d) < 1.0)) {
    throw PreconditionError("min_modulus * d must be below 1");
  }
  if (kind == FamilyKind::PhaseTwisted2x2 && d != 2) {
    throw PreconditionError("phase-twisted-2x2 requires d = 2");
  }
  if ((kind == FamilyKind::ComplexOffDiagonal || kind == FamilyKind::NegativeEntry) && d < 2) {
    throw PreconditionError(std::string(family_name(kind)) + " requires d >= 2");
  }
}

Sampler::Sampler(std::span<const std::uint32_t> seed_words) {
  std::seed_seq seq(seed_words.begin(), seed_words.end());
  engine_.seed(seq);
}

double Sampler::uniform() {
  return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
}

std::size_t Sampler::index(std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
}

std::vector<double> Sampler::simplex(std::size_t d, double floor, double total) {
  // Spacings of sorted uniforms are uniform on the standard simplex.
  std::vector<double> cuts(d + 1);
  cuts[0] = 0.0;
  cuts[d] = 1.0;
  for (std::size_t k = 1; k < d; ++k) cuts[k] = uniform();
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  const double free = total - floor * static_cast<double>(d);
  std::vector<double> out(d);
  for (std::size_t k = 0; k < d; ++k) out[k] = floor + free * (cuts[k + 1] - cuts[k]);
  return out;
}

double Sampler::angle_avoiding_pi(double margin) {
  for (;;) {
    const double t = uniform(margin, 2.0 * std::numbers::pi - margin);
    if (std::abs(t - std::numbers::pi) > kExcludedPiGap) return t;
  }
}

ComplexMatrix generate(const MatrixFamily& family, std::uint64_t seed) {
  family.validate();
  const std::array<std::uint32_t, 4> words = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
      static_cast<std::uint32_t>(family.kind), static_cast<std::uint32_t>(family.d)};
  Sampler rng(words);
  const std::size_t d = family.d;
  const double floor = family.min_modulus;

  ComplexMatrix m(d);
  switch (family.kind) {
    case FamilyKind::PositiveStochastic:
      m = positive_stochastic(rng, d, floor);
      break;
    case FamilyKind::PhaseTwisted2x2: {
      const ComplexMatrix base = positive_stochastic(rng, 2, floor);
      m = phase_twist(base, PhaseTwist(rng.angle_avoiding_pi(0.0)));
      break;
    }
    case FamilyKind::ComplexOffDiagonal:
      m = positive_stochastic(rng, d, floor);
      rotate_largest(m, rng, false);
      break;
    case FamilyKind::ComplexDiagonal:
      m = positive_stochastic(rng, d, floor);
      rotate_largest(m, rng, true);
      break;
    case FamilyKind::NegativeEntry:
      m = negative_entry(rng, d, floor);
      break;
    case FamilyKind::Substochastic:
      m = substochastic(rng, d, floor);
      break;
    case FamilyKind::AllNegative:
      m = Complex(-1.0) * positive_stochastic(rng, d, floor);
      break;
  }
  check_family_contract(family, m);
  return m;
}

void check_family_contract(const MatrixFamily& f, const ComplexMatrix& m) {
  if (m.dim() != f.d) fail(f, "dimension");
  if (!m.all_finite()) fail(f, "non-finite entry");
  const std::vector<double> sums = column_abs_sums(m);
  const auto unit_columns = [&] {
    for (double s : sums)
      if (std::abs(s - 1.0) > kContractTol) fail(f, "column modulus sum differs from 1");
  };
  const auto entries_at_least = [&](double floor) {
    if (min_modulus(m) < floor * (1.0 - kContractTol)) fail(f, "entry below min_modulus");
  };
  const std::size_t d = m.dim();
  const double tol = kDefaultClassifyTol;

  switch (f.kind) {
    case FamilyKind::PositiveStochastic:
      unit_columns();
      entries_at_least(f.min_modulus);
      if (!m.is_real(0.0)) fail(f, "complex entry");
      for (Complex z : m.data())
        if (z.real() <= 0.0) fail(f, "non-positive entry");
      break;
    case FamilyKind::PhaseTwisted2x2: {
      unit_columns();
      entries_at_least(f.min_modulus);
      if (!is_positive_real(m(0, 0), tol) || !is_positive_real(m(1, 1), tol))
        fail(f, "diagonal not positive real");
      if (std::abs(std::arg(m(0, 1) * m(1, 0))) > tol) fail(f, "off-diagonal phases do not cancel");
      break;
    }
    case FamilyKind::ComplexOffDiagonal:
    case FamilyKind::ComplexDiagonal: {
      unit_columns();
      entries_at_least(f.min_modulus);
      const bool want_diag = f.kind == FamilyKind::ComplexDiagonal;
      std::size_t rotated = 0;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (is_positive_real(m(i, j), tol)) continue;
          if ((i == j) != want_diag) fail(f, "rotated entry in wrong position");
          ++rotated;
        }
      }
      if (rotated != 1) fail(f, "expected exactly one rotated entry");
      break;
    }
    case FamilyKind::NegativeEntry: {
      unit_columns();
      entries_at_least(f.min_modulus);
      if (!m.is_real(0.0)) fail(f, "complex entry");
      bool negative = false;
      for (Complex z : m.data()) negative = negative || z.real() < 0.0;
      if (!negative) fail(f, "no negative entry");
      break;
    }
    case FamilyKind::Substochastic: {
      if (!m.is_real(0.0)) fail(f, "complex entry");
      for (Complex z : m.data())
        if (z.real() <= 0.0) fail(f, "non-positive entry");
      bool short_column = false;
      for (double s : sums) {
        if (s > 1.0 + kContractTol) fail(f, "column sum above 1");
        short_column = short_column || s <= 1.0 - kSubstochasticMargin + kContractTol;
      }
      if (!short_column) fail(f, "no column at or below 1 - margin");
      break;
    }
    case FamilyKind::AllNegative:
      unit_columns();
      entries_at_least(f.min_modulus);
      if (!m.is_real(0.0)) fail(f, "complex entry");
      for (Complex z : m.data())
        if (z.real() >= 0.0) fail(f, "non-negative entry");
      break;
  }
}

}  // namespace matpow
