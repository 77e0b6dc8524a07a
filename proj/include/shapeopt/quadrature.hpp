#pragma once

#include <Eigen/Core>

#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>

namespace shapeopt {

template <std::floating_point Scalar>
struct GaussLegendreRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
template <std::floating_point Scalar = double>
GaussLegendreRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  using Work = long double;
  GaussLegendreRule<Scalar> rule{Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(n), Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Work x = std::cos(std::numbers::pi_v<Work> * (i + 0.75L) / (n + 0.5L));
    Work derivative = 0;
    for (int it = 0; it < 100; ++it) {
      Work p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Work p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1);
      const Work dx = p1 / derivative;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    // recompute derivative at the converged node
    Work p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Work p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    derivative = n * (x * p1 - p0) / (x * x - 1);
    const Work weight = 2 / ((1 - x * x) * derivative * derivative);
    rule.nodes(n - 1 - i) = static_cast<Scalar>(x);
    rule.nodes(i) = static_cast<Scalar>(-x);
    rule.weights(i) = rule.weights(n - 1 - i) = static_cast<Scalar>(weight);
  }
  return rule;
}

/// Neumaier compensated accumulator; order of add() calls fixes the result.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value))
      correction_ += (sum_ - t) + value;
    else
      correction_ += (value - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace shapeopt
