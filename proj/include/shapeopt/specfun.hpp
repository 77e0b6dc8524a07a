#pragma once

// Bessel functions of the first kind, integer order, real nonnegative argument.
//
// Evaluation is carried out in long double regardless of the requested scalar:
//   x <= 12                : ascending power series
//   12 < x <= max(30, n^2) : Miller backward recurrence, normalized by
//                            J_0 + 2 (J_2 + J_4 + ...) = 1
//   beyond                 : Hankel asymptotic expansion
// Absolute accuracy is ~1e-15 in double for x <= 200.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shapeopt {

inline constexpr int kMaxBesselOrder = 64;

namespace detail {

using BesselWork = long double;

inline void check_bessel_order(int order) {
  if (order < 0 || order > kMaxBesselOrder)
    throw std::domain_error("bessel: order must lie in [0, 64]");
}

inline BesselWork bessel_series(int order, BesselWork x) {
  const BesselWork half = x / 2;
  BesselWork term = 1;
  for (int k = 1; k <= order; ++k) term *= half / k;
  const BesselWork step = -half * half;
  BesselWork sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= step / (BesselWork(k) * BesselWork(k + order));
    sum += term;
    if (k > half && std::fabs(term) <= std::numeric_limits<BesselWork>::epsilon() * 1e-2L * std::fabs(sum))
      break;
  }
  return sum;
}

inline BesselWork bessel_hankel(int order, BesselWork x) {
  const BesselWork mu = 4.0L * order * order;
  const BesselWork eps = std::numeric_limits<BesselWork>::epsilon() * 1e-3L;
  BesselWork p = 0, q = 0, term = 1;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      const BesselWork odd = 2 * k - 1;
      term *= (mu - odd * odd) / (BesselWork(k) * 8 * x);
    }
    const BesselWork sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0)
      p += sign * term;
    else
      q += sign * term;
    if (term == 0 || (k > 2 && std::fabs(term) < eps)) break;
  }
  const BesselWork pi = std::numbers::pi_v<BesselWork>;
  const BesselWork chi = x - (BesselWork(order) / 2 + 0.25L) * pi;
  return std::sqrt(2 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

inline BesselWork bessel_miller(int order, BesselWork x) {
  const BesselWork span = std::max<BesselWork>(order, x);
  int start = static_cast<int>(span + 14 * std::cbrt(x) + 20);
  start += start & 1;
  constexpr BesselWork kHuge = 1e300L;
  BesselWork above = 0, current = 1;
  BesselWork norm = 2 * current;  // start is even
  BesselWork result = 0;
  for (int k = start; k >= 1; --k) {
    const BesselWork below = (2 * k / x) * current - above;
    above = current;
    current = below;
    const int index = k - 1;
    if (index == order) result = current;
    if (index > 0 && index % 2 == 0) norm += 2 * current;
    if (std::fabs(current) > kHuge) {
      current /= kHuge;
      above /= kHuge;
      norm /= kHuge;
      result /= kHuge;
    }
  }
  norm += current;
  return result / norm;
}

inline BesselWork bessel_j_work(int order, BesselWork x) {
  if (x == 0) return order == 0 ? 1 : 0;
  if (x <= 12) return bessel_series(order, x);
  if (x > std::max<BesselWork>(30, BesselWork(order) * order)) return bessel_hankel(order, x);
  return bessel_miller(order, x);
}

}  // namespace detail

/// J_order(x) for integer order in [0, 64] and finite x >= 0.
template <std::floating_point Scalar = double>
Scalar bessel_j(int order, Scalar x) {
  detail::check_bessel_order(order);
  if (!std::isfinite(x) || x < 0) throw std::domain_error("bessel_j: argument must be finite and nonnegative");
  return static_cast<Scalar>(detail::bessel_j_work(order, x));
}

/// dJ_order/dx via (J_{n-1} - J_{n+1}) / 2.
template <std::floating_point Scalar = double>
Scalar bessel_j_derivative(int order, Scalar x) {
  detail::check_bessel_order(order);
  if (!std::isfinite(x) || x < 0) throw std::domain_error("bessel_j_derivative: argument must be finite and nonnegative");
  const auto xl = static_cast<detail::BesselWork>(x);
  const auto next = detail::bessel_j_work(order + 1, xl);
  if (order == 0) return static_cast<Scalar>(-next);
  return static_cast<Scalar>((detail::bessel_j_work(order - 1, xl) - next) / 2);
}

/// m-th positive zero j_{order,m}, m >= 1.
///
/// Zeros are counted by a sign-change scan from x = order (no zero lies
/// below), then bracketed by bisection and polished with one Newton step.
template <std::floating_point Scalar = double>
Scalar bessel_zero(int order, int index) {
  using detail::BesselWork;
  detail::check_bessel_order(order);
  if (index < 1) throw std::domain_error("bessel_zero: zero index must be >= 1");

  constexpr BesselWork kStep = 0.25L;  // consecutive zeros are > 2.4 apart
  BesselWork lo = order;
  BesselWork f_lo = detail::bessel_j_work(order, lo);
  int found = 0;
  for (;;) {
    const BesselWork hi = lo + kStep;
    const BesselWork f_hi = detail::bessel_j_work(order, hi);
    if (lo > 0 && f_lo == 0) {
      if (++found == index) return static_cast<Scalar>(lo);
    } else if ((f_lo < 0) != (f_hi < 0) && f_hi != 0) {
      if (++found == index) {
        BesselWork a = lo, b = hi, fa = f_lo;
        for (int it = 0; it < 200 && b - a > 4 * std::numeric_limits<BesselWork>::epsilon() * b; ++it) {
          const BesselWork mid = (a + b) / 2;
          const BesselWork fm = detail::bessel_j_work(order, mid);
          if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        BesselWork root = (a + b) / 2;
        const BesselWork slope = order == 0
                                     ? -detail::bessel_j_work(1, root)
                                     : (detail::bessel_j_work(order - 1, root) - detail::bessel_j_work(order + 1, root)) / 2;
        if (slope != 0) root -= detail::bessel_j_work(order, root) / slope;
        return static_cast<Scalar>(root);
      }
    }
    lo = hi;
    f_lo = f_hi;
  }
}

/// Piecewise Chebyshev table of J_order on [0, x_max] for hot loops.
/// Arguments past x_max fall back to bessel_j.
class BesselInterpolant {
 public:
  explicit BesselInterpolant(int order, double x_max = 64.0);

  double operator()(double x) const {
    if (x >= x_max_) return bessel_j(order_, x);
    const auto cell = static_cast<std::size_t>(x * inv_width_);
    const double t = 2.0 * (x * inv_width_ - static_cast<double>(cell)) - 1.0;
    const double* c = coeffs_.data() + cell * kTerms;
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    const double t2 = 2.0 * t;
    for (int j = kTerms - 1; j >= 1; --j) {
      const double b0 = t2 * b1 - b2 + c[j];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + c[0];
  }

  int order() const { return order_; }
  double x_max() const { return x_max_; }

 private:
  static constexpr int kTerms = 12;
  int order_;
  double x_max_;
  double inv_width_;
  std::vector<double> coeffs_;
};

}  // namespace shapeopt
