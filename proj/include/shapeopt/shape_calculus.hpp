#pragma once

// First and second shape derivatives of F on a sampled boundary.
//
//   dF[V]      = 2 oint u(x) v(x) ds,           u(x) = int_Omega f(|x - y|) dy
//   d2F[V, V]  = 2 oint oint f(|x - y|) v(x) v(y) ds_x ds_y   (only where F = 0)
//
// with v = <V, eta> the normal velocity.

#include "shapeopt/energy.hpp"
#include "shapeopt/geometry.hpp"
#include "shapeopt/kernel.hpp"

#include <Eigen/Core>

#include <string_view>
#include <vector>

namespace shapeopt {

/// Normal velocity sampled on the nodes of a BoundaryGrid.
class NormalVelocity {
 public:
  explicit NormalVelocity(Eigen::VectorXd values);

  /// v(theta_j) for a function of the grid angle.
  template <class Fn>
  static NormalVelocity from_angle(const BoundaryGrid& grid, Fn&& fn) {
    Eigen::VectorXd v(grid.size());
    for (Eigen::Index j = 0; j < grid.size(); ++j) v(j) = fn(grid.theta(j));
    return NormalVelocity(std::move(v));
  }

  /// Normal trace <b, eta> of the constant field b.
  static NormalVelocity from_constant_field(const BoundaryGrid& grid, const Eigen::Vector2d& field);

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }

 private:
  Eigen::VectorXd values_;
};

struct GradientDensity {
  Eigen::VectorXd values;  // g_j = 2 u(x_j)
  double sup_norm = 0.0;
};

GradientDensity gradient_density(const RadialKernel& kernel, const BoundaryGrid& grid, const InteriorQuadrature& quad);

/// sum_j g_j v_j w_j; std::invalid_argument on length mismatch.
double directional_derivative(const GradientDensity& gradient, const NormalVelocity& velocity, const BoundaryGrid& grid);

/// A_{jk} = f(|x_j - x_k|) w_j w_k, so that Q(v, w) = 2 v^T A w.
Eigen::MatrixXd boundary_kernel_matrix(const RadialKernel& kernel, const BoundaryGrid& grid);

/// Symmetric bilinear form Q(v, w); bit-exact symmetric in its arguments.
double hessian_form(const Eigen::MatrixXd& boundary_kernel, const NormalVelocity& v, const NormalVelocity& w);
double hessian_form(const RadialKernel& kernel, const BoundaryGrid& grid, const NormalVelocity& v, const NormalVelocity& w);

struct CheckedHessian {
  double value = 0.0;
  double energy = 0.0;
  /// The reduced form is only the second derivative where F = 0; set when
  /// |F| exceeds the tolerance.
  bool off_critical = false;
};

CheckedHessian hessian_form_checked(const StarShape& shape, const RadialKernel& kernel, const BoundaryGrid& grid,
                                    const NormalVelocity& v, const NormalVelocity& w, double energy_tolerance = 1e-6);

enum class ModeParity { cos, sin };

inline std::string_view to_string(ModeParity parity) { return parity == ModeParity::cos ? "cos" : "sin"; }

struct ModeEntry {
  int k = 0;
  ModeParity parity = ModeParity::cos;
  double value = 0.0;        // Q(Y, Y) from the boundary double sum
  double closed_form = 0.0;  // Graf addition theorem reference
};

struct HessianSpectrum {
  double radius = 0.0;
  double lambda = 0.0;
  std::vector<ModeEntry> entries;
};

/// Closed form of Q for the mode cos(k theta) (or sin) on the disk of radius R
/// with kernel J_0(lambda r): 4 pi^2 R^2 J_k(lambda R)^2, doubled for k = 0.
double ball_mode_closed_form(double radius, double lambda, int k);

/// Q on cos k theta and sin k theta (k >= 1) for the disk of radius R, k = 0..k_max.
HessianSpectrum ball_mode_spectrum(double radius, double lambda, int k_max, int n_boundary);

}  // namespace shapeopt
