#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "matpow/matrix.hpp"

namespace matpow {

/// Positive probability vector v with P v = v.
struct StationaryVector {
  std::vector<double> v;
  double residual = 0.0;  // max |P v - v|
};

/// Power iteration from the uniform vector on a real, strictly positive,
/// column-stochastic P. Stops once successive vectors differ by at most
/// `tol` in max norm.
///
/// Throws PreconditionError if P is not of that form and ConvergenceError
/// if `max_iter` steps are not enough.
StationaryVector stationary_vector(const ComplexMatrix& p, double tol = 1e-13,
                                   std::uint64_t max_iter = 1'000'000);

/// Matrix whose every column is v, i.e. v * 1^T.
ComplexMatrix rank_one_limit(const StationaryVector& v, std::size_t d);

}  // namespace matpow
