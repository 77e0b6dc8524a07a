#pragma once

// Radial kernels f(|x - y|) and their spectral (Bochner) measures.

#include "shapeopt/specfun.hpp"

#include <memory>
#include <stdexcept>
#include <string_view>
#include <variant>

namespace shapeopt {

/// J_p(lambda r) / r^p with p = (dim - 2) / 2; in the plane this is J_0(lambda r).
/// Only even dimensions are supported (integer Bessel order).
class BesselKernel {
 public:
  BesselKernel(double lambda, int dim);

  double lambda() const { return lambda_; }
  int dim() const { return dim_; }
  int order() const { return order_; }

  double operator()(double r) const {
    if (order_ == 0) return (*table_)(lambda_ * r);
    if (r < 1e-8) return origin_value_;
    if (lambda_ * r < 2.0) return scaled_series(r);
    return (*table_)(lambda_ * r) / std::pow(r, order_);
  }

 private:
  double lambda_;
  int dim_;
  int order_;
  double origin_value_;
  // origin_value * sum_k (-(lambda r / 2)^2)^k p! / (k! (k + p)!): no cancellation against r^p
  double scaled_series(double r) const;
  std::shared_ptr<const BesselInterpolant> table_;
};

struct GaussianKernel {
  double sigma;
  double operator()(double r) const { return std::exp(-r * r / (2.0 * sigma * sigma)); }
};

struct ConstantKernel {
  double value;
  double operator()(double) const { return value; }
};

class RadialKernel {
 public:
  using Alternative = std::variant<BesselKernel, GaussianKernel, ConstantKernel>;

  static RadialKernel bessel(double lambda, int dim = 2);
  static RadialKernel gaussian(double sigma);
  static RadialKernel constant(double value);

  bool positive_definite() const;
  std::string_view kind() const;
  const Alternative& alternative() const { return alternative_; }

  /// Kernel value; std::domain_error for negative or non-finite r.
  double operator()(double r) const;

  /// Runs `fn` with the concrete kernel so hot loops avoid per-call dispatch.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    return std::visit(std::forward<Fn>(fn), alternative_);
  }

  /// The planar (dim 2) Bessel alternative, or nullptr.
  const BesselKernel* planar_bessel() const;

 private:
  explicit RadialKernel(Alternative alternative) : alternative_(std::move(alternative)) {}
  Alternative alternative_;
};

inline double eval(const RadialKernel& kernel, double r) { return kernel(r); }

/// Uniform measure on the sphere |xi| = radius with the given total mass
/// (radius 0 is a point mass at the origin).
struct SpectralAtom {
  double radius;
  double mass;
};

/// Absolutely continuous radial density on the plane, per unit xi-area.
struct SpectralDensity {
  double sigma;
  double operator()(double rho) const;
};

using BochnerMeasure = std::variant<SpectralAtom, SpectralDensity>;

class UnsupportedKernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Measure mu with f(|z|) = int exp(i <xi, z>) d mu(xi).
/// The planar Bessel kernel J_0(lambda r) maps to a unit atom at radius lambda.
BochnerMeasure bochner_measure(const RadialKernel& kernel);

}  // namespace shapeopt
