#pragma once

#include <vector>

#include "clickcorr/model.hpp"

namespace clickcorr {

/// Eigen-decomposition of a real symmetric matrix.
struct SymmetricEigen {
  /// Ascending.
  std::vector<double> values;
  /// Column k is the unit eigenvector of values[k].
  Matrix<double> vectors;
};

/// Off-diagonal Frobenius norm at which the Jacobi sweeps stop, relative to
/// max(1, ‖A‖_F).
inline constexpr double kJacobiOffDiagonalTolerance = 1e-14;

/// Cyclic Jacobi rotations. Intended for the small dense matrices used here
/// (dimension up to ~10). Throws InvalidParameter for non-square or
/// non-symmetric input and NumericalError if the sweeps fail to converge.
SymmetricEigen jacobi_eigen(const Matrix<double>& symmetric);

}  // namespace clickcorr
