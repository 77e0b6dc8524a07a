#include "shapeopt/flow.hpp"

#include "shapeopt/shape_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace shapeopt {

namespace {

struct Evaluated {
  BoundaryGrid grid;
  double energy;
  GradientDensity gradient;
};

Evaluated evaluate(const StarShape& shape, const RadialKernel& kernel, const FlowOptions& options) {
  const auto& res = options.resolution;
  auto grid = sample_boundary(shape, res.n_boundary);
  const auto quad = interior_quadrature(shape, res.n_theta, res.n_rho);
  auto gradient = gradient_density(kernel, grid, quad);
  double value = 0.0;
  if (const auto* bessel = kernel.planar_bessel())
    value = energy_spectral_value(shape, bessel->lambda(), res.n_directions, grid);
  else
    value = energy_spatial_value(kernel, quad);
  return {std::move(grid), value, std::move(gradient)};
}

/// Euler-moved, refit and optionally recentered shape, or nullopt if the
/// radius leaves the representable class.
std::optional<StarShape> moved_shape(const StarShape& shape, const Evaluated& state, double dt, const FlowOptions& options) {
  const auto& grid = state.grid;
  Eigen::Matrix2Xd points(2, grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double radial_speed = -state.gradient.values(j) * grid.speed(j) / grid.radius(j);
    const double r = grid.radius(j) + dt * radial_speed;
    if (!(r > 0.0)) return std::nullopt;
    points.col(j) = shape.center() + r * Eigen::Vector2d(std::cos(grid.theta(j)), std::sin(grid.theta(j)));
  }
  try {
    auto moved = fit_radius(points, shape.center(), options.K_fit).shape;
    if (options.recenter) moved = translate(moved, -centroid(moved));
    return moved;
  } catch (const DegenerateShapeError&) {
    return std::nullopt;
  }
}

struct Accepted {
  StarShape shape;
  double dt;
  int halvings;
  double energy;
};

Accepted line_search(const StarShape& shape, const RadialKernel& kernel, const Evaluated& state, double dt,
                     const FlowOptions& options) {
  bool any_valid = false;
  for (int halvings = 0; halvings <= options.max_halvings; ++halvings, dt *= 0.5) {
    auto trial = moved_shape(shape, state, dt, options);
    if (!trial) continue;
    any_valid = true;
    const double trial_energy = energy(*trial, kernel, options.resolution);
    if (trial_energy < state.energy) return {std::move(*trial), dt, halvings, trial_energy};
  }
  if (!any_valid) throw FlowError(FlowErrorKind::degenerate, "flow: radius became nonpositive for every trial step");
  throw FlowError(FlowErrorKind::stall, "flow: no energy decrease after the maximum number of step halvings");
}

FlowRecord make_record(double t, const StarShape& shape, const Evaluated& state) {
  return FlowRecord{t, shape, state.energy, state.gradient.sup_norm, centroid(shape), area(shape)};
}

}  // namespace

void FlowOptions::validate() const {
  if (!(dt0 > 0.0) || !std::isfinite(dt0)) throw std::invalid_argument("flow: dt0 must be positive");
  if (max_steps < 0) throw std::invalid_argument("flow: max_steps must be nonnegative");
  if (!(grad_tol > 0.0) || !(energy_tol > 0.0)) throw std::invalid_argument("flow: tolerances must be positive");
  if (K_fit < 0 || K_fit > kMaxHarmonics) throw std::invalid_argument("flow: K_fit must lie in [0, 128]");
  if (max_halvings < 0) throw std::invalid_argument("flow: max_halvings must be nonnegative");
  if (resolution.n_boundary < 2 * K_fit + 1) throw std::invalid_argument("flow: boundary resolution too small for K_fit");
  if (resolution.n_boundary < 16 || resolution.n_boundary % 2 != 0)
    throw std::invalid_argument("flow: boundary resolution must be even and >= 16");
  if (resolution.n_theta < 16 || resolution.n_rho < 4) throw std::invalid_argument("flow: interior resolution too small");
  if (resolution.n_directions < 16 || resolution.n_directions % 2 != 0)
    throw std::invalid_argument("flow: direction count must be even and >= 16");
}

FlowStep flow_step(const StarShape& shape, const RadialKernel& kernel, double dt, const FlowOptions& options) {
  options.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("flow_step: dt must be positive");
  const auto state = evaluate(shape, kernel, options);
  StepDiagnostics diag;
  diag.energy_before = state.energy;
  diag.grad_sup = state.gradient.sup_norm;
  if (state.gradient.sup_norm <= options.grad_tol) {
    diag.stationary = true;
    diag.energy_after = state.energy;
    return {shape, diag};
  }
  auto accepted = line_search(shape, kernel, state, dt, options);
  diag.dt = accepted.dt;
  diag.halvings = accepted.halvings;
  diag.energy_after = accepted.energy;
  return {std::move(accepted.shape), diag};
}

FlowTrajectory run_flow(const StarShape& initial, const RadialKernel& kernel, const FlowOptions& options,
                        const FlowObserver& observer) {
  options.validate();
  FlowTrajectory trajectory;
  StarShape shape = initial;
  auto state = evaluate(shape, kernel, options);
  double t = 0.0;
  trajectory.records.push_back(make_record(t, shape, state));
  if (observer) observer(trajectory.records.back());

  double dt = options.dt0;
  for (int step = 0;; ++step) {
    if (state.gradient.sup_norm < options.grad_tol) {
      trajectory.termination = FlowTermination::gradient;
      break;
    }
    if (state.energy < options.energy_tol) {
      trajectory.termination = FlowTermination::energy;
      break;
    }
    if (step >= options.max_steps) {
      trajectory.termination = FlowTermination::max_steps;
      break;
    }
    try {
      auto accepted = line_search(shape, kernel, state, dt, options);
      shape = std::move(accepted.shape);
      t += accepted.dt;
      dt = std::min(options.dt0, 2.0 * accepted.dt);
      state = evaluate(shape, kernel, options);
    } catch (const FlowError& error) {
      throw FlowError(error.kind(), error.what(), std::move(trajectory));
    } catch (const DegenerateShapeError& error) {
      throw FlowError(FlowErrorKind::degenerate, error.what(), std::move(trajectory));
    }
    trajectory.records.push_back(make_record(t, shape, state));
    if (observer) observer(trajectory.records.back());
  }
  return trajectory;
}

RadiusStatistics radius_statistics(const StarShape& shape, int n_rays) {
  if (n_rays < 16) throw std::invalid_argument("radius_statistics: need at least 16 rays");
  const Eigen::Vector2d c = centroid(shape);
  const int harmonics = std::min(kMaxHarmonics, shape.harmonics() + 16);
  const int samples = std::max(n_rays, 8 * harmonics + 16);
  Eigen::Matrix2Xd points(2, samples);
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    points.col(j) = shape.center() + shape.radius(theta) * Eigen::Vector2d(std::cos(theta), std::sin(theta));
  }
  const auto about_centroid = fit_radius(points, c, harmonics).shape;
  Eigen::VectorXd r(n_rays);
  for (int j = 0; j < n_rays; ++j) r(j) = about_centroid.radius(2.0 * std::numbers::pi * j / n_rays);
  RadiusStatistics stats;
  stats.mean = r.mean();
  stats.stddev = std::sqrt((r.array() - stats.mean).square().mean());
  return stats;
}

}  // namespace shapeopt
