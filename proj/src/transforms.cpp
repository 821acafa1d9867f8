#include "matpow/transforms.hpp"

#include <cmath>
#include <numbers>

namespace matpow {

ComplexMatrix modulus_matrix(const ComplexMatrix& b) {
  ComplexMatrix r(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) r(i, j) = std::abs(b(i, j));
  return r;
}

PhaseTwist::PhaseTwist(double phi) : phi_(phi) {
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw PreconditionError("phase twist angle must lie in [0, 2*pi)");
  }
  if (std::abs(phi - std::numbers::pi) <= kTwistAngularTol) {
    throw PreconditionError("phase twist angle pi is excluded");
  }
}

ComplexMatrix phase_twist(const ComplexMatrix& a, PhaseTwist t) {
  if (a.dim() != 2) throw PreconditionError("phase_twist: matrix must be 2x2");
  if (!a.is_real(kRealImagTol)) throw PreconditionError("phase_twist: matrix must be real");
  if (a(0, 1).real() < 0.0 || a(1, 0).real() < 0.0) {
    throw PreconditionError("phase_twist: off-diagonal entries must be nonnegative");
  }
  ComplexMatrix out(2);
  out(0, 0) = a(0, 0).real();
  out(1, 1) = a(1, 1).real();
  out(0, 1) = std::polar(a(0, 1).real(), t.phi());
  out(1, 0) = std::polar(a(1, 0).real(), -t.phi());
  return out;
}

bool is_likewise(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionError("is_likewise: dimension mismatch");
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    if (std::abs(std::abs(a.data()[k]) - std::abs(b.data()[k])) > tol) return false;
  }
  return true;
}

}  // namespace matpow
