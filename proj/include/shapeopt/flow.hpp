#pragma once

// Antigradient flow of F on star-shaped domains.
//
// One explicit Euler step moves the boundary with normal speed v = -g, which
// in polar form is dr/dt = v * sqrt(r^2 + r'^2) / r. The moved radius is refit
// to K_fit harmonics and, optionally, translated so the centroid is the origin.
// Steps are halved until F strictly decreases.

#include "shapeopt/energy.hpp"
#include "shapeopt/geometry.hpp"
#include "shapeopt/kernel.hpp"

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <vector>

namespace shapeopt {

struct FlowOptions {
  double dt0 = 0.25;
  int max_steps = 2000;
  double grad_tol = 1e-6;
  double energy_tol = 1e-6;
  bool recenter = true;
  int K_fit = 32;
  int max_halvings = 30;
  Resolution resolution;

  /// std::invalid_argument on out-of-range values.
  void validate() const;
};

struct FlowRecord {
  double t = 0.0;
  StarShape shape;
  double energy = 0.0;
  double grad_sup = 0.0;
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  double area = 0.0;
};

enum class FlowTermination { gradient, energy, max_steps };

struct FlowTrajectory {
  std::vector<FlowRecord> records;
  FlowTermination termination = FlowTermination::max_steps;

  const FlowRecord& final_record() const { return records.back(); }
};

struct StepDiagnostics {
  double dt = 0.0;
  int halvings = 0;
  double energy_before = 0.0;
  double energy_after = 0.0;
  double grad_sup = 0.0;
  /// True when the gradient is below grad_tol and the shape was returned as is.
  bool stationary = false;
};

struct FlowStep {
  StarShape shape;
  StepDiagnostics diagnostics;
};

enum class FlowErrorKind { degenerate, stall };

class FlowError : public std::runtime_error {
 public:
  FlowError(FlowErrorKind kind, const std::string& what, FlowTrajectory partial = {})
      : std::runtime_error(what), kind_(kind), partial_(std::move(partial)) {}

  FlowErrorKind kind() const { return kind_; }
  const FlowTrajectory& partial() const { return partial_; }

 private:
  FlowErrorKind kind_;
  FlowTrajectory partial_;
};

FlowStep flow_step(const StarShape& shape, const RadialKernel& kernel, double dt, const FlowOptions& options);

/// Called after every accepted step (and once for the initial shape).
using FlowObserver = std::function<void(const FlowRecord&)>;

FlowTrajectory run_flow(const StarShape& initial, const RadialKernel& kernel, const FlowOptions& options,
                        const FlowObserver& observer = {});

struct RadiusStatistics {
  double mean = 0.0;
  double stddev = 0.0;
  double relative() const { return stddev / mean; }
};

/// Mean and standard deviation of the distance from the centroid along
/// uniformly spaced rays.
RadiusStatistics radius_statistics(const StarShape& shape, int n_rays = 1024);

}  // namespace shapeopt
