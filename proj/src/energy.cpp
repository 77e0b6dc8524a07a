#include "shapeopt/energy.hpp"

#include "shapeopt/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace shapeopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int half_even(int n, int floor) {
  int half = n / 2;
  half -= half & 1;
  return std::max(half, floor);
}

double spectral_sum(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid) {
  CompensatedSum sum;
  for (int i = 0; i < n_directions; ++i) {
    const double phi = kTwoPi * i / n_directions;
    const Eigen::Vector2d xi = lambda * Eigen::Vector2d(std::cos(phi), std::sin(phi));
    sum.add(std::norm(fourier_indicator(shape, xi, grid)));
  }
  // (1/2pi) * (2pi/M) * sum
  return sum.value() / n_directions;
}

}  // namespace

double potential(const RadialKernel& kernel, const Eigen::Vector2d& x, const InteriorQuadrature& quad) {
  return kernel.visit([&](const auto& f) {
    CompensatedSum sum;
    for (Eigen::Index m = 0; m < quad.size(); ++m) sum.add(f((x - quad.nodes.col(m)).norm()) * quad.weights(m));
    return sum.value();
  });
}

std::complex<double> fourier_indicator(const StarShape& shape, const Eigen::Vector2d& xi, const BoundaryGrid& grid) {
  const double xi2 = xi.squaredNorm();
  if (xi2 == 0.0) return {area(shape), 0.0};
  // Work relative to the center; exp(i<xi,x>) - 1 keeps small |xi| free of cancellation
  // because oint <xi, eta> ds = 0.
  const Eigen::Vector2d& c = shape.center();
  CompensatedSum re, im;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double phase = xi.x() * (grid.points(0, j) - c.x()) + xi.y() * (grid.points(1, j) - c.y());
    const double flux = (xi.x() * grid.normals(0, j) + xi.y() * grid.normals(1, j)) * grid.weights(j);
    const double half_sin = std::sin(0.5 * phase);
    re.add(-2.0 * half_sin * half_sin * flux);
    im.add(std::sin(phase) * flux);
  }
  // divide by i |xi|^2
  const std::complex<double> local(im.value() / xi2, -re.value() / xi2);
  return std::polar(1.0, xi.dot(c)) * local;
}

FourierSlice fourier_slice(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid) {
  if (n_directions < 1) throw std::invalid_argument("fourier_slice: need at least one direction");
  FourierSlice slice;
  slice.lambda = lambda;
  slice.directions.resize(n_directions);
  slice.values.resize(n_directions);
  for (int i = 0; i < n_directions; ++i) {
    const double phi = kTwoPi * i / n_directions;
    slice.directions(i) = phi;
    slice.values(i) = fourier_indicator(shape, lambda * Eigen::Vector2d(std::cos(phi), std::sin(phi)), grid);
  }
  return slice;
}

double energy_spatial_value(const RadialKernel& kernel, const InteriorQuadrature& quad) {
  const Eigen::Index n = quad.size();
  std::vector<double> xs(n), ys(n), qs(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    xs[m] = quad.nodes(0, m);
    ys[m] = quad.nodes(1, m);
    qs[m] = quad.weights(m);
  }
  return kernel.visit([&](const auto& f) {
    const double f0 = f(0.0);
    CompensatedSum total;
    for (Eigen::Index m = 0; m < n; ++m) {
      CompensatedSum row;
      for (Eigen::Index k = m + 1; k < n; ++k) {
        const double dx = xs[m] - xs[k], dy = ys[m] - ys[k];
        row.add(f(std::sqrt(dx * dx + dy * dy)) * qs[k]);
      }
      total.add(qs[m] * (f0 * qs[m] + 2.0 * row.value()));
    }
    return total.value();
  });
}

double energy_spectral_value(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("energy_spectral: lambda must be positive");
  if (n_directions < 16 || n_directions % 2 != 0)
    throw std::invalid_argument("energy_spectral: direction count must be even and >= 16");
  return spectral_sum(shape, lambda, n_directions, grid);
}

EnergyReport energy_spatial(const StarShape& shape, const RadialKernel& kernel, const InteriorQuadrature& quad) {
  EnergyReport report;
  report.method = EnergyMethod::spatial;
  report.value = energy_spatial_value(kernel, quad);
  report.n_interior = static_cast<int>(quad.size());
  const int half_theta = half_even(quad.n_theta, 16);
  const int half_rho = std::max(4, quad.n_rho / 2);
  if (half_theta < quad.n_theta || half_rho < quad.n_rho) {
    const auto coarse = interior_quadrature(shape, half_theta, half_rho);
    report.error_estimate = std::abs(report.value - energy_spatial_value(kernel, coarse));
  }
  return report;
}

EnergyReport energy_spectral(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid) {
  EnergyReport report;
  report.method = EnergyMethod::spectral;
  report.value = energy_spectral_value(shape, lambda, n_directions, grid);
  report.n_boundary = static_cast<int>(grid.size());
  report.n_directions = n_directions;
  const int half_boundary = half_even(static_cast<int>(grid.size()), 16);
  const int half_directions = half_even(n_directions, 8);
  const auto coarse = sample_boundary(shape, half_boundary);
  report.error_estimate = std::abs(report.value - spectral_sum(shape, lambda, half_directions, coarse));
  return report;
}

double energy(const StarShape& shape, const RadialKernel& kernel, const Resolution& resolution) {
  if (const auto* bessel = kernel.planar_bessel()) {
    const auto grid = sample_boundary(shape, resolution.n_boundary);
    return energy_spectral_value(shape, bessel->lambda(), resolution.n_directions, grid);
  }
  return energy_spatial_value(kernel, interior_quadrature(shape, resolution.n_theta, resolution.n_rho));
}

}  // namespace shapeopt
