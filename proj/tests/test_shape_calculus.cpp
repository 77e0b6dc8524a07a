#include "oracles.hpp"

#include <shapeopt/energy.hpp>
#include <shapeopt/shape_calculus.hpp>

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

using namespace shapeopt;
using Eigen::Vector2d;

namespace {

constexpr double kPi = std::numbers::pi;
const double kJ11 = oracle::bessel_zero(1, 3.0, 4.0);

StarShape wobbly() {
  Eigen::VectorXd ak(3), bk(3);
  ak << 0.12, -0.05, 0.02;
  bk << 0.03, 0.06, -0.01;
  return StarShape(Vector2d(0.2, -0.1), 1.0, ak, bk);
}

// Boundary moved a distance eps * v along the normal, as a flow step does it.
template <class Fn>
StarShape deform(const StarShape& shape, Fn&& v, double eps) {
  const auto grid = sample_boundary(shape, 1024);
  Eigen::Matrix2Xd points(2, grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double r = grid.radius(j) + eps * v(grid.theta(j)) * grid.speed(j) / grid.radius(j);
    points.col(j) = shape.center() + r * Vector2d(std::cos(grid.theta(j)), std::sin(grid.theta(j)));
  }
  return fit_radius(points, shape.center(), 64).shape;
}

struct Mode {
  int k;
  double a, b;
};

std::vector<Mode> random_modes(std::mt19937_64& rng, bool skip_translation = false) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Mode> modes;
  for (int k = 0; k <= 5; ++k) {
    if (skip_translation && k == 1) continue;
    modes.push_back({k, coef(rng), k ? coef(rng) : 0.0});
  }
  return modes;
}

double evaluate_modes(const std::vector<Mode>& modes, double t) {
  double v = 0.0;
  for (const auto& m : modes) v += m.a * std::cos(m.k * t) + m.b * std::sin(m.k * t);
  return v;
}

}  // namespace

TEST_CASE("gradient density") {
  const auto shape = wobbly();
  const auto grid = sample_boundary(shape, 128);
  const auto quad = interior_quadrature(shape, 128, 16);
  const auto g = gradient_density(RadialKernel::constant(1.0), grid, quad);
  CHECK((g.values.array() - 2 * area(shape)).abs().maxCoeff() < 1e-12);

  const auto disk = StarShape::disk(1.0);
  const auto critical = gradient_density(RadialKernel::bessel(kJ11), sample_boundary(disk, 512), interior_quadrature(disk, 256, 32));
  CHECK(critical.sup_norm < 1e-6);
}

TEST_CASE("gradient density of the ellipse against nested Romberg") {
  const double a = 2.0, b = 1.0, lambda = 2.0;
  const auto shape = make_ellipse(a, b, 64);
  const auto grid = sample_boundary(shape, 64);
  const auto g = gradient_density(RadialKernel::bessel(lambda), grid, interior_quadrature(shape, 256, 32));
  const auto exact_radius = [&](double t) { return a * b / std::hypot(b * std::cos(t), a * std::sin(t)); };
  for (int j : {0, 5, 16, 27}) {
    const Vector2d x = grid.points.col(j);
    const double u = oracle::romberg(
        [&](double t) {
          const Vector2d omega(std::cos(t), std::sin(t));
          return oracle::romberg(
              [&](double rho) { return rho * std::cyl_bessel_j(0.0, lambda * (x - rho * omega).norm()); }, 0.0,
              exact_radius(t), 1e-14);
        },
        0.0, 2 * kPi, 1e-12);
    CHECK(std::abs(g.values(j) - 2 * u) < 1e-7);
  }
}

TEST_CASE("directional derivative") {
  const auto disk = StarShape::disk(1.0);
  const auto grid = sample_boundary(disk, 512);
  const auto g = gradient_density(RadialKernel::bessel(kJ11), grid, interior_quadrature(disk, 256, 32));
  CHECK(directional_derivative(g, NormalVelocity(Eigen::VectorXd::Zero(512)), grid) == 0.0);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto modes = random_modes(rng);
    const auto v = NormalVelocity::from_angle(grid, [&](double t) { return evaluate_modes(modes, t); });
    CHECK(std::abs(directional_derivative(g, v, grid)) < 1e-6 * v.values().cwiseAbs().maxCoeff());
  }
  CHECK_THROWS_AS(directional_derivative(g, NormalVelocity(Eigen::VectorXd::Zero(10)), grid), std::invalid_argument);
  CHECK_THROWS_AS(NormalVelocity(Eigen::VectorXd::Constant(3, NAN)), std::invalid_argument);
}

TEST_CASE("directional derivative matches central differences") {
  const double eps = 1e-4;
  const auto ellipse = make_ellipse(2.0, 1.0, 64);
  const auto kernel = RadialKernel::bessel(2.0);
  const auto grid = sample_boundary(ellipse, 512);
  const auto g = gradient_density(kernel, grid, interior_quadrature(ellipse, 256, 32));
  // cos theta is odd under x -> -x, so both sides vanish for the centered ellipse
  const auto cosine = [](double t) { return std::cos(t); };
  const double fd1 = (energy(deform(ellipse, cosine, eps), kernel) - energy(deform(ellipse, cosine, -eps), kernel)) / (2 * eps);
  const double an1 = directional_derivative(g, NormalVelocity::from_angle(grid, cosine), grid);
  CHECK(std::abs(an1 - fd1) < 1e-9);

  for (const auto& v : {std::function<double(double)>([](double t) { return std::cos(2 * t); }),
                        std::function<double(double)>([](double t) { return 1.0 + 0.5 * std::sin(t) - 0.3 * std::cos(3 * t); })}) {
    const double fd = (energy(deform(ellipse, v, eps), kernel) - energy(deform(ellipse, v, -eps), kernel)) / (2 * eps);
    const double analytic = directional_derivative(g, NormalVelocity::from_angle(grid, v), grid);
    CHECK(std::abs(analytic - fd) <= 1e-5 * std::abs(fd));
  }
}

TEST_CASE("Hessian form") {
  const auto disk = StarShape::disk(1.0);
  const auto grid = sample_boundary(disk, 256);
  const auto kernel = RadialKernel::bessel(kJ11);
  const auto a = boundary_kernel_matrix(kernel, grid);
  const NormalVelocity zero(Eigen::VectorXd::Zero(256));
  CHECK(hessian_form(a, zero, zero) == 0.0);

  const auto c1 = NormalVelocity::from_angle(grid, [](double t) { return std::cos(t); });
  CHECK(std::abs(hessian_form(a, c1, c1)) < 1e-7);
  const auto one = NormalVelocity::from_angle(grid, [](double) { return 1.0; });
  CHECK(hessian_form(a, one, one) == doctest::Approx(oracle::disk_mode(1.0, kJ11, 0)).epsilon(1e-9));

  std::mt19937_64 rng(5);
  double c_min = INFINITY;
  for (int trial = 0; trial < 50; ++trial) {
    const auto mv = random_modes(rng), mw = random_modes(rng);
    const auto v = NormalVelocity::from_angle(grid, [&](double t) { return evaluate_modes(mv, t); });
    const auto w = NormalVelocity::from_angle(grid, [&](double t) { return evaluate_modes(mw, t); });
    CHECK(std::abs(hessian_form(a, v, w) - hessian_form(a, w, v)) < 1e-12);
    CHECK(hessian_form(a, v, v) >= -1e-8);

    const auto mp = random_modes(rng, true);
    const auto p = NormalVelocity::from_angle(grid, [&](double t) { return evaluate_modes(mp, t); });
    const double norm2 = p.values().cwiseAbs2().dot(grid.weights);
    c_min = std::min(c_min, hessian_form(a, p, p) / norm2);
  }
  MESSAGE("coercivity constant off span{cos, sin}: " << c_min);
  CHECK(c_min > 1e-3);

  CHECK(hessian_form(kernel, grid, c1, one) == hessian_form(a, c1, one));
  CHECK_THROWS_AS(hessian_form(a, c1, NormalVelocity(Eigen::VectorXd::Zero(3))), std::invalid_argument);

  const auto checked = hessian_form_checked(disk, kernel, grid, c1, c1);
  CHECK_FALSE(checked.off_critical);
  CHECK(hessian_form_checked(disk, RadialKernel::bessel(2.0), grid, c1, c1).off_critical);
}

TEST_CASE("translations are flat directions") {
  const auto disk = StarShape::disk(1.0);
  const auto grid = sample_boundary(disk, 256);
  const auto kernel = RadialKernel::bessel(kJ11);
  const Vector2d b(0.6, -0.8);
  const auto v = NormalVelocity::from_constant_field(grid, b);
  CHECK(std::abs(hessian_form(kernel, grid, v, v)) < 1e-8);

  const auto shape = wobbly();
  const double h = 1e-3;
  const double f0 = energy(shape, kernel);
  const double fp = energy(translate(shape, h * b), kernel);
  const double fm = energy(translate(shape, -h * b), kernel);
  CHECK(std::abs((fp - 2 * f0 + fm) / (h * h)) < 1e-8);
}

TEST_CASE("ball mode spectrum") {
  const auto critical = ball_mode_spectrum(1.0, kJ11, 6, 256);
  for (const auto& e : critical.entries) {
    if (e.k == 1)
      CHECK(std::abs(e.value) < 1e-7);
    else
      CHECK(e.value > 1e-3);
    CHECK(e.value >= -1e-9);
  }
  for (std::size_t i = 1; i + 1 < critical.entries.size(); i += 2) {
    CHECK(critical.entries[i].k == critical.entries[i + 1].k);
    CHECK(std::abs(critical.entries[i].value - critical.entries[i + 1].value) < 1e-9);
  }

  const auto spectrum = ball_mode_spectrum(1.0, 2.0, 4, 256);
  for (const auto& e : spectrum.entries) {
    const double oracle_value = oracle::disk_mode(1.0, 2.0, e.k);
    CHECK(std::abs(e.value - oracle_value) <= 1e-7 * oracle_value);
    CHECK(std::abs(e.closed_form - oracle_value) <= 1e-13 * oracle_value);
  }
  CHECK_THROWS_AS(ball_mode_spectrum(1.0, 2.0, 10, 32), std::invalid_argument);
}
