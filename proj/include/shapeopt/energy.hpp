#pragma once

// F[Omega] = int_Omega int_Omega f(|x - y|) dx dy, evaluated two independent ways:
//   spatial  - interior tensor quadrature, O(N_int^2) kernel evaluations
//   spectral - planar Bessel kernels only: F = (1/2pi) int_0^{2pi} |chi_hat(lambda omega(phi))|^2 dphi
//              with chi_hat reduced to a boundary integral, O(N * M)

#include "shapeopt/geometry.hpp"
#include "shapeopt/kernel.hpp"

#include <Eigen/Core>

#include <complex>

namespace shapeopt {

enum class EnergyMethod { spatial, spectral };

struct EnergyReport {
  double value = 0.0;
  EnergyMethod method = EnergyMethod::spatial;
  int n_boundary = 0;
  int n_interior = 0;
  int n_directions = 0;
  /// |value - value at half resolution|
  double error_estimate = 0.0;
};

/// chi_hat on the circle |xi| = lambda at uniform angles phi_i = 2 pi i / M.
struct FourierSlice {
  double lambda = 0.0;
  Eigen::VectorXd directions;
  Eigen::VectorXcd values;
};

/// Discretization used where a module needs F without a caller-supplied grid.
struct Resolution {
  int n_boundary = 512;
  int n_theta = 256;
  int n_rho = 32;
  int n_directions = 256;
};

/// u(x) = int_Omega f(|x - y|) dy.
double potential(const RadialKernel& kernel, const Eigen::Vector2d& x, const InteriorQuadrature& quad);

/// chi_hat(xi) = int_Omega exp(i <xi, x>) dx through the divergence identity
///   chi_hat(xi) = (1 / (i |xi|^2)) oint exp(i <xi, x>) <xi, eta> ds.
/// Returns area(shape) at xi = 0.
std::complex<double> fourier_indicator(const StarShape& shape, const Eigen::Vector2d& xi, const BoundaryGrid& grid);

FourierSlice fourier_slice(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid);

double energy_spatial_value(const RadialKernel& kernel, const InteriorQuadrature& quad);
double energy_spectral_value(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid);

EnergyReport energy_spatial(const StarShape& shape, const RadialKernel& kernel, const InteriorQuadrature& quad);

/// Requires lambda > 0 and an even direction count >= 16.
EnergyReport energy_spectral(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid);

/// Spectral route for planar Bessel kernels, spatial route otherwise.
double energy(const StarShape& shape, const RadialKernel& kernel, const Resolution& resolution = {});

}  // namespace shapeopt
