#include "shapeopt/pompeiu.hpp"

#include "shapeopt/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shapeopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvGolden = 0.6180339887498949;

/// Minimizes fn on [a, b]; returns (argmin, value).
template <class Fn>
std::pair<double, double> golden_minimize(Fn&& fn, double a, double b, double tolerance) {
  double x1 = b - kInvGolden * (b - a), x2 = a + kInvGolden * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tolerance) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvGolden * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvGolden * (b - a);
      f2 = fn(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

double modulus(const StarShape& shape, double lambda, double phi, const BoundaryGrid& grid) {
  return std::abs(fourier_indicator(shape, lambda * Eigen::Vector2d(std::cos(phi), std::sin(phi)), grid));
}

}  // namespace

double max_modulus(const StarShape& shape, double lambda, int n_directions, const BoundaryGrid& grid) {
  if (n_directions < 3) throw std::invalid_argument("max_modulus: need at least three directions");
  const double step = kTwoPi / n_directions;
  std::vector<double> values(n_directions);
  for (int i = 0; i < n_directions; ++i) values[i] = modulus(shape, lambda, step * i, grid);

  // refine the two largest local maxima of the direction table
  std::vector<int> peaks;
  for (int i = 0; i < n_directions; ++i) {
    const double prev = values[(i + n_directions - 1) % n_directions];
    const double next = values[(i + 1) % n_directions];
    if (values[i] >= prev && values[i] >= next) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });
  double best = *std::max_element(values.begin(), values.end());
  for (std::size_t p = 0; p < std::min<std::size_t>(2, peaks.size()); ++p) {
    const double phi = step * peaks[p];
    const auto [arg, neg] = golden_minimize([&](double x) { return -modulus(shape, lambda, x, grid); }, phi - step,
                                            phi + step, 1e-11);
    best = std::max(best, -neg);
  }
  return best;
}

PompeiuScan scan(const StarShape& shape, double lambda_min, double lambda_max, int n_lambda, int n_directions,
                 const BoundaryGrid& grid) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || !std::isfinite(lambda_max))
    throw std::invalid_argument("scan: need 0 < lambda_min < lambda_max");
  if (n_lambda < 2) throw std::invalid_argument("scan: need at least two lambda samples");
  if (n_directions < 16) throw std::invalid_argument("scan: need at least 16 directions");

  PompeiuScan result;
  result.area = area(shape);
  result.n_directions = n_directions;
  result.lambdas = Eigen::VectorXd::LinSpaced(n_lambda, lambda_min, lambda_max);
  result.max_modulus.resize(n_lambda);
  for (int i = 0; i < n_lambda; ++i) result.max_modulus(i) = max_modulus(shape, result.lambdas(i), n_directions, grid);

  const auto m_of = [&](double lambda) { return max_modulus(shape, lambda, n_directions, grid); };
  const double h = result.lambdas(1) - result.lambdas(0);

  struct Candidate {
    double lambda;
    double value;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < n_lambda; ++i) {
    const bool left_ok = i == 0 || result.max_modulus(i) <= result.max_modulus(i - 1);
    const bool right_ok = i == n_lambda - 1 || result.max_modulus(i) <= result.max_modulus(i + 1);
    if (!left_ok || !right_ok) continue;
    if (i == 0 || i == n_lambda - 1) {
      candidates.push_back({result.lambdas(i), result.max_modulus(i)});
      continue;
    }
    const auto [arg, value] = golden_minimize(m_of, result.lambdas(i) - h, result.lambdas(i) + h, 1e-12 * result.lambdas(i));
    if (value <= result.max_modulus(i))
      candidates.push_back({arg, value});
    else
      candidates.push_back({result.lambdas(i), result.max_modulus(i)});
  }

  double min_value = candidates.front().value;
  for (const auto& c : candidates) min_value = std::min(min_value, c.value);
  const double tie = min_value + 1e-10 * result.area;
  for (const auto& c : candidates) {
    if (c.value <= tie) {
      result.argmin_lambda = c.lambda;
      result.min_value = c.value;
      break;
    }
  }
  return result;
}

std::optional<double> detects_failure(const PompeiuScan& result, const StarShape& shape, const BoundaryGrid& grid,
                                      double tol, int n_directions) {
  if (!(result.min_value < tol * result.area)) return std::nullopt;
  const double confirm = energy_spectral_value(shape, result.argmin_lambda, n_directions, grid);
  if (!(confirm < tol * tol * result.area * result.area)) return std::nullopt;
  return result.argmin_lambda;
}

}  // namespace shapeopt
