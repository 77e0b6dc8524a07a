#include "shapeopt/specfun.hpp"

namespace shapeopt {

BesselInterpolant::BesselInterpolant(int order, double x_max)
    : order_(order), x_max_(x_max), inv_width_(2.0) {
  detail::check_bessel_order(order);
  if (!(x_max > 0) || !std::isfinite(x_max)) throw std::invalid_argument("BesselInterpolant: x_max must be positive");
  const auto cells = static_cast<std::size_t>(std::ceil(x_max * inv_width_));
  coeffs_.assign(cells * kTerms, 0.0);

  const detail::BesselWork pi = std::numbers::pi_v<detail::BesselWork>;
  std::vector<detail::BesselWork> samples(kTerms);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const detail::BesselWork left = static_cast<detail::BesselWork>(cell) / inv_width_;
    const detail::BesselWork half_width = 0.5L / inv_width_;
    for (int i = 0; i < kTerms; ++i) {
      const detail::BesselWork node = std::cos(pi * (i + 0.5L) / kTerms);
      samples[i] = detail::bessel_j_work(order, left + half_width * (node + 1));
    }
    for (int j = 0; j < kTerms; ++j) {
      detail::BesselWork acc = 0;
      for (int i = 0; i < kTerms; ++i) acc += samples[i] * std::cos(pi * j * (i + 0.5L) / kTerms);
      acc *= 2.0L / kTerms;
      if (j == 0) acc /= 2;
      coeffs_[cell * kTerms + j] = static_cast<double>(acc);
    }
  }
}

}  // namespace shapeopt
