#pragma once

#include "matpow/matrix.hpp"

namespace matpow {

inline constexpr double kRealImagTol = 1e-12;
inline constexpr double kTwistAngularTol = 1e-9;

/// Entrywise |b(i, j)| as a real-valued complex matrix.
ComplexMatrix modulus_matrix(const ComplexMatrix& b);

/// Angle applied to the off-diagonal pair of a 2x2 matrix. The angle is
/// kept in [0, 2*pi) and may not be pi.
class PhaseTwist {
 public:
  /// Throws PreconditionError if phi is outside [0, 2*pi) or within
  /// kTwistAngularTol of pi.
  explicit PhaseTwist(double phi);

  [[nodiscard]] double phi() const noexcept { return phi_; }

 private:
  double phi_;
};

/// For a real 2x2 matrix with nonnegative off-diagonal entries, returns the
/// matrix with a12 multiplied by e^{i phi} and a21 by e^{-i phi}. The
/// diagonal is left alone and may have either sign.
ComplexMatrix phase_twist(const ComplexMatrix& a, PhaseTwist t);

/// True iff corresponding entries have moduli within `tol` of each other.
bool is_likewise(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

}  // namespace matpow
