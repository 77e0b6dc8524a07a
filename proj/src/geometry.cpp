#include "shapeopt/geometry.hpp"

#include "shapeopt/quadrature.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shapeopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Vector2d direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

RadiusJet evaluate_jet(double a0, const Eigen::VectorXd& ak, const Eigen::VectorXd& bk, double theta) {
  RadiusJet jet{a0, 0.0, 0.0};
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = c1, sk = s1;
  for (Eigen::Index k = 1; k <= ak.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double a = ak(k - 1), b = bk(k - 1);
    jet.value += a * ck + b * sk;
    jet.first += kk * (b * ck - a * sk);
    jet.second -= kk * kk * (a * ck + b * sk);
    const double next_c = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = next_c;
  }
  return jet;
}

}  // namespace

StarShape::StarShape(Eigen::Vector2d center, double a0, Eigen::VectorXd ak, Eigen::VectorXd bk)
    : center_(std::move(center)), a0_(a0), ak_(std::move(ak)), bk_(std::move(bk)), min_radius_(0.0) {
  if (ak_.size() != bk_.size()) throw std::invalid_argument("StarShape: ak and bk must have equal length");
  if (ak_.size() > kMaxHarmonics) throw std::invalid_argument("StarShape: at most 128 harmonics");
  if (!center_.allFinite() || !std::isfinite(a0_) || !ak_.allFinite() || !bk_.allFinite())
    throw std::invalid_argument("StarShape: non-finite coefficient");
  if (!(a0_ > 0.0)) throw DegenerateShapeError("StarShape: a0 must be positive");

  min_radius_ = a0_;
  if (ak_.size() > 0) {
    for (int j = 0; j < kPositivityGrid; ++j)
      min_radius_ = std::min(min_radius_, radius(kTwoPi * j / kPositivityGrid));
  }
  if (!(min_radius_ > 0.0)) throw DegenerateShapeError("StarShape: radius function is not positive");
}

StarShape StarShape::disk(double radius, const Eigen::Vector2d& center) {
  return StarShape(center, radius, Eigen::VectorXd(), Eigen::VectorXd());
}

double StarShape::radius(double theta) const { return evaluate_jet(a0_, ak_, bk_, theta).value; }

RadiusJet StarShape::radius_jet(double theta) const { return evaluate_jet(a0_, ak_, bk_, theta); }

BoundaryGrid sample_boundary(const StarShape& shape, int n) {
  if (n < 16 || n % 2 != 0) throw std::invalid_argument("sample_boundary: node count must be even and >= 16");
  BoundaryGrid grid;
  grid.theta.resize(n);
  grid.points.resize(2, n);
  grid.normals.resize(2, n);
  grid.weights.resize(n);
  grid.curvature.resize(n);
  grid.radius.resize(n);
  grid.speed.resize(n);
  const double dtheta = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    const double theta = dtheta * j;
    const RadiusJet jet = shape.radius_jet(theta);
    if (!(jet.value > 0.0)) throw DegenerateShapeError("sample_boundary: nonpositive radius at a node");
    const Eigen::Vector2d omega = direction(theta);
    const Eigen::Vector2d omega_perp(-omega.y(), omega.x());
    const double speed = std::hypot(jet.value, jet.first);
    grid.theta(j) = theta;
    grid.points.col(j) = shape.center() + jet.value * omega;
    grid.normals.col(j) = (jet.value * omega - jet.first * omega_perp) / speed;
    grid.weights(j) = speed * dtheta;
    grid.curvature(j) =
        (jet.value * jet.value + 2.0 * jet.first * jet.first - jet.value * jet.second) / (speed * speed * speed);
    grid.radius(j) = jet.value;
    grid.speed(j) = speed;
  }
  return grid;
}

InteriorQuadrature interior_quadrature(const StarShape& shape, int n_theta, int n_rho) {
  if (n_theta < 16) throw std::invalid_argument("interior_quadrature: n_theta must be >= 16");
  if (n_rho < 4) throw std::invalid_argument("interior_quadrature: n_rho must be >= 4");
  const auto rule = gauss_legendre<double>(n_rho);
  InteriorQuadrature quad;
  quad.n_theta = n_theta;
  quad.n_rho = n_rho;
  quad.nodes.resize(2, static_cast<Eigen::Index>(n_theta) * n_rho);
  quad.weights.resize(static_cast<Eigen::Index>(n_theta) * n_rho);
  const double dtheta = kTwoPi / n_theta;
  Eigen::Index m = 0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = dtheta * i;
    const double r = shape.radius(theta);
    if (!(r > 0.0)) throw DegenerateShapeError("interior_quadrature: nonpositive radius");
    const Eigen::Vector2d omega = direction(theta);
    for (int l = 0; l < n_rho; ++l, ++m) {
      const double rho = 0.5 * r * (rule.nodes(l) + 1.0);
      quad.nodes.col(m) = shape.center() + rho * omega;
      quad.weights(m) = 0.5 * r * rule.weights(l) * rho * dtheta;
    }
  }
  return quad;
}

double area(const StarShape& shape) {
  // (1/2) int r^2 dtheta, Parseval
  return std::numbers::pi * shape.a0() * shape.a0() +
         0.5 * std::numbers::pi * (shape.ak().squaredNorm() + shape.bk().squaredNorm());
}

Eigen::Vector2d centroid(const StarShape& shape) {
  // int_Omega (x - c) dx = (1/3) int r^3 omega dtheta; the integrand is a
  // trigonometric polynomial of degree 3K+1, so the trapezoid rule is exact.
  const int n = std::max(16, 4 * shape.harmonics() + 8);
  const double dtheta = kTwoPi / n;
  CompensatedSum mx, my;
  for (int j = 0; j < n; ++j) {
    const double theta = dtheta * j;
    const double r = shape.radius(theta);
    const double r3 = r * r * r;
    mx.add(r3 * std::cos(theta));
    my.add(r3 * std::sin(theta));
  }
  const Eigen::Vector2d moment(mx.value() * dtheta / 3.0, my.value() * dtheta / 3.0);
  return shape.center() + moment / area(shape);
}

double perimeter(const BoundaryGrid& grid) {
  CompensatedSum sum;
  for (Eigen::Index j = 0; j < grid.size(); ++j) sum.add(grid.weights(j));
  return sum.value();
}

StarShape translate(const StarShape& shape, const Eigen::Vector2d& offset) {
  return StarShape(shape.center() + offset, shape.a0(), shape.ak(), shape.bk());
}

StarShape rotate(const StarShape& shape, double angle) {
  const Eigen::Matrix2d rotation{{std::cos(angle), -std::sin(angle)}, {std::sin(angle), std::cos(angle)}};
  Eigen::VectorXd ak(shape.harmonics()), bk(shape.harmonics());
  for (int k = 1; k <= shape.harmonics(); ++k) {
    const double c = std::cos(k * angle), s = std::sin(k * angle);
    const double a = shape.ak()(k - 1), b = shape.bk()(k - 1);
    ak(k - 1) = a * c - b * s;
    bk(k - 1) = a * s + b * c;
  }
  return StarShape(rotation * shape.center(), shape.a0(), std::move(ak), std::move(bk));
}

StarShape scale(const StarShape& shape, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale: factor must be positive");
  return StarShape(factor * shape.center(), factor * shape.a0(), factor * shape.ak(), factor * shape.bk());
}

RadiusFit fit_radius(const Eigen::Matrix2Xd& points, const Eigen::Vector2d& center, int harmonics) {
  const Eigen::Index n = points.cols();
  if (harmonics < 0 || harmonics > kMaxHarmonics) throw std::invalid_argument("fit_radius: harmonics out of range");
  if (n < 2 * harmonics + 1) throw std::invalid_argument("fit_radius: too few samples for the requested harmonics");

  Eigen::VectorXd theta(n), rho(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d d = points.col(i) - center;
    rho(i) = d.norm();
    if (!(rho(i) > 0.0)) throw DegenerateShapeError("fit_radius: sample coincides with the center");
    theta(i) = std::atan2(d.y(), d.x());
  }
  double winding = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double step = theta((i + 1) % n) - theta(i);
    step = std::remainder(step, kTwoPi);
    if (!(step > 0.0)) throw DegenerateShapeError("fit_radius: samples are not star-shaped about the center");
    winding += step;
  }
  if (std::abs(winding - kTwoPi) > 1e-6) throw DegenerateShapeError("fit_radius: samples do not wind once");

  Eigen::MatrixXd design(n, 2 * harmonics + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    for (int k = 1; k <= harmonics; ++k) {
      design(i, 2 * k - 1) = std::cos(k * theta(i));
      design(i, 2 * k) = std::sin(k * theta(i));
    }
  }
  const Eigen::VectorXd coeffs = design.householderQr().solve(rho);
  Eigen::VectorXd ak(harmonics), bk(harmonics);
  for (int k = 1; k <= harmonics; ++k) {
    ak(k - 1) = coeffs(2 * k - 1);
    bk(k - 1) = coeffs(2 * k);
  }
  const double residual = (design * coeffs - rho).cwiseAbs().maxCoeff();
  return {StarShape(center, coeffs(0), std::move(ak), std::move(bk)), residual};
}

namespace {

StarShape fit_polar(double (*radius)(double, double, double), double p, double q, int harmonics) {
  const int n = std::max(4096, 8 * harmonics + 16);
  Eigen::Matrix2Xd points(2, n);
  for (int j = 0; j < n; ++j) {
    const double theta = kTwoPi * j / n;
    points.col(j) = radius(theta, p, q) * direction(theta);
  }
  return fit_radius(points, Eigen::Vector2d::Zero(), harmonics).shape;
}

}  // namespace

StarShape make_ellipse(double semi_x, double semi_y, int harmonics) {
  if (!(semi_x > 0.0) || !(semi_y > 0.0)) throw std::invalid_argument("make_ellipse: semi-axes must be positive");
  return fit_polar(
      [](double theta, double a, double b) {
        const double c = std::cos(theta) / a, s = std::sin(theta) / b;
        return 1.0 / std::sqrt(c * c + s * s);
      },
      semi_x, semi_y, harmonics);
}

StarShape make_rounded_square(double side, int harmonics) {
  if (!(side > 0.0)) throw std::invalid_argument("make_rounded_square: side must be positive");
  return fit_polar(
      [](double theta, double s, double) {
        return 0.5 * s / std::max(std::abs(std::cos(theta)), std::abs(std::sin(theta)));
      },
      side, 0.0, harmonics);
}

StarShape with_area(const StarShape& shape, double target_area) {
  if (!(target_area > 0.0)) throw std::invalid_argument("with_area: target area must be positive");
  const double factor = std::sqrt(target_area / area(shape));
  return StarShape(shape.center(), factor * shape.a0(), factor * shape.ak(), factor * shape.bk());
}

}  // namespace shapeopt
