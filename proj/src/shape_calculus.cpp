#include "shapeopt/shape_calculus.hpp"

#include "shapeopt/quadrature.hpp"
#include "shapeopt/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shapeopt {

NormalVelocity::NormalVelocity(Eigen::VectorXd values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw std::invalid_argument("NormalVelocity: non-finite value");
}

NormalVelocity NormalVelocity::from_constant_field(const BoundaryGrid& grid, const Eigen::Vector2d& field) {
  return NormalVelocity(grid.normals.transpose() * field);
}

GradientDensity gradient_density(const RadialKernel& kernel, const BoundaryGrid& grid, const InteriorQuadrature& quad) {
  const Eigen::Index n = grid.size();
  const Eigen::Index m_count = quad.size();
  std::vector<double> ys(2 * m_count);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    ys[2 * m] = quad.nodes(0, m);
    ys[2 * m + 1] = quad.nodes(1, m);
  }
  GradientDensity gradient;
  gradient.values.resize(n);
  kernel.visit([&](const auto& f) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = grid.points(0, j), y = grid.points(1, j);
      CompensatedSum u;
      for (Eigen::Index m = 0; m < m_count; ++m) {
        const double dx = x - ys[2 * m], dy = y - ys[2 * m + 1];
        u.add(f(std::sqrt(dx * dx + dy * dy)) * quad.weights(m));
      }
      gradient.values(j) = 2.0 * u.value();
    }
  });
  gradient.sup_norm = n > 0 ? gradient.values.cwiseAbs().maxCoeff() : 0.0;
  return gradient;
}

double directional_derivative(const GradientDensity& gradient, const NormalVelocity& velocity, const BoundaryGrid& grid) {
  if (gradient.values.size() != grid.size() || velocity.size() != grid.size())
    throw std::invalid_argument("directional_derivative: gradient, velocity and grid sizes differ");
  CompensatedSum sum;
  for (Eigen::Index j = 0; j < grid.size(); ++j) sum.add(gradient.values(j) * velocity.values()(j) * grid.weights(j));
  return sum.value();
}

Eigen::MatrixXd boundary_kernel_matrix(const RadialKernel& kernel, const BoundaryGrid& grid) {
  const Eigen::Index n = grid.size();
  Eigen::MatrixXd a(n, n);
  kernel.visit([&](const auto& f) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(j, j) = f(0.0) * grid.weights(j) * grid.weights(j);
      for (Eigen::Index k = j + 1; k < n; ++k) {
        const double value = f((grid.points.col(j) - grid.points.col(k)).norm()) * grid.weights(j) * grid.weights(k);
        a(j, k) = value;
        a(k, j) = value;
      }
    }
  });
  return a;
}

double hessian_form(const Eigen::MatrixXd& boundary_kernel, const NormalVelocity& v, const NormalVelocity& w) {
  if (boundary_kernel.rows() != v.size() || boundary_kernel.cols() != w.size() || v.size() != w.size())
    throw std::invalid_argument("hessian_form: velocity does not match the boundary grid");
  const double vw = v.values().dot(boundary_kernel * w.values());
  const double wv = w.values().dot(boundary_kernel * v.values());
  return vw + wv;
}

double hessian_form(const RadialKernel& kernel, const BoundaryGrid& grid, const NormalVelocity& v, const NormalVelocity& w) {
  if (v.size() != grid.size() || w.size() != grid.size())
    throw std::invalid_argument("hessian_form: velocity does not match the boundary grid");
  return hessian_form(boundary_kernel_matrix(kernel, grid), v, w);
}

CheckedHessian hessian_form_checked(const StarShape& shape, const RadialKernel& kernel, const BoundaryGrid& grid,
                                    const NormalVelocity& v, const NormalVelocity& w, double energy_tolerance) {
  CheckedHessian result;
  result.value = hessian_form(kernel, grid, v, w);
  Resolution resolution;
  resolution.n_boundary = static_cast<int>(grid.size());
  result.energy = energy(shape, kernel, resolution);
  result.off_critical = !(std::abs(result.energy) <= energy_tolerance);
  return result;
}

double ball_mode_closed_form(double radius, double lambda, int k) {
  const double j = bessel_j(k, lambda * radius);
  const double value = 4.0 * std::numbers::pi * std::numbers::pi * radius * radius * j * j;
  return k == 0 ? 2.0 * value : value;
}

HessianSpectrum ball_mode_spectrum(double radius, double lambda, int k_max, int n_boundary) {
  if (!(radius > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("ball_mode_spectrum: radius and lambda must be positive");
  if (k_max < 0 || 4 * k_max > n_boundary) throw std::invalid_argument("ball_mode_spectrum: need 0 <= k_max <= N/4");
  const auto disk = StarShape::disk(radius);
  const auto grid = sample_boundary(disk, n_boundary);
  const auto a = boundary_kernel_matrix(RadialKernel::bessel(lambda, 2), grid);

  HessianSpectrum spectrum{radius, lambda, {}};
  for (int k = 0; k <= k_max; ++k) {
    const double reference = ball_mode_closed_form(radius, lambda, k);
    const auto cos_mode = NormalVelocity::from_angle(grid, [k](double t) { return std::cos(k * t); });
    spectrum.entries.push_back({k, ModeParity::cos, hessian_form(a, cos_mode, cos_mode), reference});
    if (k > 0) {
      const auto sin_mode = NormalVelocity::from_angle(grid, [k](double t) { return std::sin(k * t); });
      spectrum.entries.push_back({k, ModeParity::sin, hessian_form(a, sin_mode, sin_mode), reference});
    }
  }
  return spectrum;
}

}  // namespace shapeopt
