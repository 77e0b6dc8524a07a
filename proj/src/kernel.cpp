#include "shapeopt/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace shapeopt {

namespace {

std::shared_ptr<const BesselInterpolant> shared_table(int order) {
  // One table per order for the lifetime of the process.
  static const auto tables = [] {
    std::array<std::shared_ptr<const BesselInterpolant>, kMaxBesselOrder + 1> all{};
    all[0] = std::make_shared<const BesselInterpolant>(0);
    return all;
  }();
  if (tables[order]) return tables[order];
  return std::make_shared<const BesselInterpolant>(order);
}

}  // namespace

BesselKernel::BesselKernel(double lambda, int dim) : lambda_(lambda), dim_(dim), order_(0), origin_value_(1.0) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("bessel kernel: lambda must be finite and positive");
  if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("bessel kernel: dim must be even and >= 2");
  order_ = (dim - 2) / 2;
  if (order_ > kMaxBesselOrder) throw std::invalid_argument("bessel kernel: dim too large");
  // lim_{r->0} J_p(lambda r) / r^p = lambda^p / (2^p p!)
  origin_value_ = std::pow(0.5 * lambda, order_) / std::tgamma(order_ + 1.0);
  table_ = shared_table(order_);
}

double BesselKernel::scaled_series(double r) const {
  const double q = -0.25 * lambda_ * r * lambda_ * r;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= q / (k * (k + order_));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return origin_value_ * sum;
}

RadialKernel RadialKernel::bessel(double lambda, int dim) { return RadialKernel(BesselKernel(lambda, dim)); }

RadialKernel RadialKernel::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("gaussian kernel: sigma must be finite and positive");
  return RadialKernel(GaussianKernel{sigma});
}

RadialKernel RadialKernel::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("constant kernel: value must be finite");
  return RadialKernel(ConstantKernel{value});
}

bool RadialKernel::positive_definite() const {
  if (const auto* c = std::get_if<ConstantKernel>(&alternative_)) return c->value >= 0.0;
  return true;
}

std::string_view RadialKernel::kind() const {
  return visit([](const auto& k) -> std::string_view {
    using K = std::decay_t<decltype(k)>;
    if constexpr (std::is_same_v<K, BesselKernel>)
      return "bessel";
    else if constexpr (std::is_same_v<K, GaussianKernel>)
      return "gaussian";
    else
      return "constant";
  });
}

double RadialKernel::operator()(double r) const {
  if (!std::isfinite(r) || r < 0.0) throw std::domain_error("kernel: distance must be finite and nonnegative");
  return visit([r](const auto& k) { return k(r); });
}

const BesselKernel* RadialKernel::planar_bessel() const {
  const auto* b = std::get_if<BesselKernel>(&alternative_);
  return (b != nullptr && b->dim() == 2) ? b : nullptr;
}

double SpectralDensity::operator()(double rho) const {
  // 2D Fourier pair: exp(-r^2 / (2 s^2)) = int exp(i<xi,z>) (s^2 / 2pi) exp(-s^2 |xi|^2 / 2) dxi
  return sigma * sigma / (2.0 * std::numbers::pi) * std::exp(-0.5 * sigma * sigma * rho * rho);
}

BochnerMeasure bochner_measure(const RadialKernel& kernel) {
  if (!kernel.positive_definite()) throw UnsupportedKernelError("bochner_measure: kernel is not positive definite");
  return kernel.visit([](const auto& k) -> BochnerMeasure {
    using K = std::decay_t<decltype(k)>;
    if constexpr (std::is_same_v<K, BesselKernel>) {
      // sphere |xi| = lambda in R^n carrying (2 pi lambda)^{-n/2} ds_xi
      const double n = k.dim();
      const double sphere = 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
      const double mass = sphere * std::pow(k.lambda(), n - 1.0) / std::pow(2.0 * std::numbers::pi * k.lambda(), n / 2.0);
      return SpectralAtom{k.lambda(), mass};
    } else if constexpr (std::is_same_v<K, GaussianKernel>) {
      return SpectralDensity{k.sigma};
    } else {
      return SpectralAtom{0.0, k.value};
    }
  });
}

}  // namespace shapeopt
