#pragma once

// Search for a circle |xi| = lambda on which chi_hat_Omega vanishes identically.
//
// M(lambda) = max over directions of |chi_hat(lambda omega)| is tabulated on a
// lambda grid, and every interior local minimum of the table is refined by
// golden-section search. A domain fails the Pompeiu property exactly when
// some M(lambda) is zero; then F = 0 for the kernel J_0(lambda r).

#include "shapeopt/geometry.hpp"

#include <Eigen/Core>

#include <optional>

namespace shapeopt {

struct PompeiuScan {
  Eigen::VectorXd lambdas;
  Eigen::VectorXd max_modulus;  // M(lambda_i)
  double argmin_lambda = 0.0;   // refined
  double min_value = 0.0;       // M(argmin_lambda)
  double area = 0.0;
  int n_directions = 0;
};

/// M(lambda): maximum over n_dir uniform directions, refined around the
/// largest grid values.
double max_modulus(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid);

/// Requires 0 < lambda_min < lambda_max, n_lambda >= 2, n_dir >= 16.
/// Ties between refined minima (within 1e-10 * area) go to the smallest lambda.
PompeiuScan scan(const StarShape& shape, double lambda_min, double lambda_max, int n_lambda, int n_directions,
                 const BoundaryGrid& grid);

/// lambda* when min_value < tol * area and energy_spectral(lambda*) < tol^2 area^2
/// confirms it; nullopt otherwise.
std::optional<double> detects_failure(const PompeiuScan& result, const StarShape& shape, const BoundaryGrid& grid,
                                      double tol, int n_directions = 256);

}  // namespace shapeopt
