// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include <shapeopt/shapeopt.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace shapeopt;
using Eigen::Vector2d;

namespace {

constexpr double kPi = std::numbers::pi;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int index, const char* title, Outcome& outcome) {
  std::printf("%s %d %s:%s\n", outcome.pass ? "PASS" : "FAIL", index, title, outcome.detail.str().c_str());
  std::fflush(stdout);
  if (!outcome.pass) ++failures;
}

StarShape wobbly() {
  Eigen::VectorXd ak(3), bk(3);
  ak << 0.12, -0.05, 0.02;
  bk << 0.03, 0.06, -0.01;
  return StarShape(Vector2d(0.2, -0.1), 1.0, ak, bk);
}

StarShape unit_square() { return with_area(make_rounded_square(1.0, 32), 1.0); }

// 1. Bessel values against the extended precision series, and zeros.
void bessel_suite(double j11) {
  Outcome out;
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(50.0 * i / 199.0);
  std::vector<double> reference;
  for (int n : {0, 1, 2, 5})
    for (double x : xs) reference.push_back(oracle::bessel_j(n, x));

  const Stopwatch clock;
  std::vector<double> values;
  for (int n : {0, 1, 2, 5})
    for (double x : xs) values.push_back(bessel_j(n, x));
  const double zeros[3] = {bessel_zero(0, 1), bessel_zero(1, 1), bessel_zero(1, 2)};
  const double elapsed = clock.seconds();

  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) worst = std::max(worst, std::abs(values[i] - reference[i]));
  const double zero_refs[3] = {oracle::bessel_zero(0, 2.0, 3.0), oracle::bessel_zero(1, 3.0, 4.0), oracle::bessel_zero(1, 7.0, 7.5)};
  double zero_err = 0.0;
  for (int i = 0; i < 3; ++i) zero_err = std::max(zero_err, std::abs(zeros[i] - zero_refs[i]));
  zero_err = std::max(zero_err, std::abs(j11 - zero_refs[1]));

  out.detail << " max|J - series| = " << worst << ", max zero error = " << zero_err << ", time " << elapsed << " s";
  out.require(worst < 1e-12, "value error < 1e-12");
  out.require(zero_err < 1e-12, "zero error < 1e-12");
  out.require(elapsed < 1.0, "runtime < 1 s");
  report(1, "Bessel suite", out);
}

// 2. Critical disk energy and agreement of the two routes.
void critical_energy(double j11) {
  Outcome out;
  const Stopwatch clock;
  const auto disk = StarShape::disk(1.0);
  const double spectral = energy_spectral_value(disk, j11, 256, sample_boundary(disk, 512));
  const double spatial = energy_spatial_value(RadialKernel::bessel(j11), interior_quadrature(disk, 256, 32));
  double worst_gap = 0.0;
  for (const auto& shape : {disk, make_ellipse(2.0, 1.0, 48), unit_square()}) {
    const auto grid = sample_boundary(shape, 512);
    const auto quad = interior_quadrature(shape, 256, 32);
    for (double lambda : {1.0, 2.0, j11})
      worst_gap = std::max(worst_gap, std::abs(energy_spatial_value(RadialKernel::bessel(lambda), quad) -
                                               energy_spectral_value(shape, lambda, 256, grid)));
  }
  const double elapsed = clock.seconds();
  out.detail << " |F| spectral = " << std::abs(spectral) << ", spatial = " << std::abs(spatial)
             << ", max route gap = " << worst_gap << ", time " << elapsed << " s";
  out.require(std::abs(spectral) < 1e-8, "spectral |F| < 1e-8");
  out.require(std::abs(spatial) < 3e-6, "spatial |F| < 3e-6");
  out.require(worst_gap < 1e-6, "routes agree to 1e-6");
  out.require(elapsed < 30.0, "runtime < 30 s");
  report(2, "critical-disk energy", out);
}

// 3. Gradient density and potential vanish for the critical disk.
void criticality(double j11) {
  Outcome out;
  const auto disk = StarShape::disk(1.0);
  const auto kernel = RadialKernel::bessel(j11);
  const auto quad = interior_quadrature(disk, 256, 32);
  const auto g = gradient_density(kernel, sample_boundary(disk, 512), quad);
  double worst_u = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double rho = 0.1 * i + 0.05 * (i % 3);  // 0 .. 2, inside and outside
    const double phi = 0.7 * i;
    worst_u = std::max(worst_u, std::abs(potential(kernel, rho * Vector2d(std::cos(phi), std::sin(phi)), quad)));
  }
  out.detail << " sup|g| = " << g.sup_norm << ", max|u| over 20 probes = " << worst_u;
  out.require(g.sup_norm < 1e-6, "sup|g| < 1e-6");
  out.require(worst_u < 1e-8, "|u| < 1e-8");
  report(3, "criticality", out);
}

// Boundary moved by eps * v along the normal, through the flow-step deformation.
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

struct SmoothVelocity {
  std::vector<double> a, b;
  double scale = 1.0;

  double operator()(double t) const {
    double v = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
    return v / scale;
  }
};

SmoothVelocity random_velocity(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  SmoothVelocity v;
  for (int k = 0; k <= 5; ++k) {
    v.a.push_back(coef(rng));
    v.b.push_back(k ? coef(rng) : 0.0);
  }
  double sup = 0.0;
  for (int i = 0; i < 4096; ++i) sup = std::max(sup, std::abs(v(2 * kPi * i / 4096)));
  v.scale = sup;
  return v;
}

// 4. Directional derivative against central differences.
void gradient_check(double j11) {
  Outcome out;
  const Stopwatch clock;
  std::mt19937_64 rng(2024);
  const double eps = 1e-4;
  struct Case {
    StarShape shape;
    RadialKernel kernel;
  };
  const std::vector<Case> cases = {{make_ellipse(2.0, 1.0, 48), RadialKernel::bessel(2.0)},
                                   {wobbly(), RadialKernel::bessel(j11)},
                                   {unit_square(), RadialKernel::bessel(3.0)}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto grid = sample_boundary(c.shape, 512);
    const auto g = gradient_density(c.kernel, grid, interior_quadrature(c.shape, 256, 32));
    for (int trial = 0; trial < 10; ++trial) {
      const auto v = random_velocity(rng);
      const double fd = (energy(deform(c.shape, v, eps), c.kernel) - energy(deform(c.shape, v, -eps), c.kernel)) / (2 * eps);
      const double analytic = directional_derivative(g, NormalVelocity::from_angle(grid, v), grid);
      worst = std::max(worst, std::abs(analytic - fd) / std::abs(fd));
    }
  }
  const double elapsed = clock.seconds();
  out.detail << " max relative error = " << worst << " over 30 velocities, time " << elapsed << " s";
  out.require(worst < 1e-4, "relative error < 1e-4");
  out.require(elapsed < 60.0, "runtime < 60 s");
  report(4, "gradient check", out);
}

// 5. Mode spectrum of the second derivative on the disk.
void mode_spectrum(double j11) {
  Outcome out;
  const auto critical = ball_mode_spectrum(1.0, j11, 6, 256);
  double q1 = 0.0, others = INFINITY;
  for (const auto& e : critical.entries) {
    if (e.k == 1)
      q1 = std::max(q1, std::abs(e.value));
    else
      others = std::min(others, e.value);
  }
  double worst = 0.0;
  for (const auto& e : ball_mode_spectrum(1.0, 2.0, 6, 256).entries) {
    const double reference = oracle::disk_mode(1.0, 2.0, e.k);
    worst = std::max(worst, std::abs(e.value - reference) / reference);
  }
  out.detail << " max|Q_1| = " << q1 << ", min Q_k (k != 1) = " << others << ", max relative gap to Graf form at lambda=2 = " << worst;
  out.require(q1 < 1e-7, "Q_1 < 1e-7");
  out.require(others > 1e-3, "Q_k > 1e-3");
  out.require(worst < 1e-7, "closed form to 1e-7");
  report(5, "ball mode spectrum", out);
}

// 6. Antigradient flow from the 3:1 ellipse and the rounded square.
void flow_runs(double j11) {
  Outcome out;
  const auto kernel = RadialKernel::bessel(j11);
  const FlowOptions options;  // reference resolution, K_fit = 32, dt0 = 0.25
  struct Start {
    const char* name;
    StarShape shape;
  };
  const std::vector<Start> starts = {{"ellipse", make_ellipse(std::sqrt(3.0), 1.0 / std::sqrt(3.0), 32)},
                                     {"square", with_area(make_rounded_square(1.0, 32), kPi)}};
  for (const auto& start : starts) {
    const Stopwatch clock;
    try {
      const auto trajectory = run_flow(start.shape, kernel, options);
      const double elapsed = clock.seconds();
      bool monotone = true;
      for (std::size_t i = 1; i < trajectory.records.size(); ++i)
        monotone = monotone && trajectory.records[i].energy < trajectory.records[i - 1].energy;
      const auto& last = trajectory.final_record();
      const auto stats = radius_statistics(last.shape);
      double radius_gap = INFINITY;
      for (int m = 1; m <= 4; ++m) radius_gap = std::min(radius_gap, std::abs(stats.mean - bessel_zero(1, m) / j11) / (bessel_zero(1, m) / j11));
      out.detail << ' ' << start.name << ": steps " << trajectory.records.size() - 1 << ", F " << last.energy << ", std/mean "
                 << stats.relative() << ", radius gap " << radius_gap << ", time " << elapsed << " s;";
      const std::string tag = start.name;
      out.require(last.energy < 1e-6, tag + " F < 1e-6");
      out.require(stats.relative() < 1e-2, tag + " std/mean < 1e-2");
      out.require(radius_gap < 1e-2, tag + " radius within 1% of j_1m / lambda");
      out.require(monotone, tag + " F strictly decreasing");
      out.require(elapsed < 600.0, tag + " runtime < 10 min");
    } catch (const FlowError& error) {
      out.require(false, std::string(start.name) + " flow error: " + error.what());
    }
  }
  report(6, "flow to the disk", out);
}

// 7. Pompeiu scan round trip.
void pompeiu_round_trip(double j11) {
  Outcome out;
  const auto disk = StarShape::disk(1.0);
  const auto disk_grid = sample_boundary(disk, 512);
  const auto disk_scan = scan(disk, 1.0, 8.0, 141, 64, disk_grid);
  const auto lambda_star = detects_failure(disk_scan, disk, disk_grid, 1e-6);
  const double star = lambda_star.value_or(disk_scan.argmin_lambda);
  const double confirm = energy_spectral_value(disk, star, 256, disk_grid);

  const auto square = unit_square();
  const auto square_scan = scan(square, 1.0, 20.0, 191, 128, sample_boundary(square, 512));
  out.detail << " disk lambda* = " << star << " (|gap| " << std::abs(star - j11) << "), min M = " << disk_scan.min_value
             << ", F(lambda*) = " << confirm << "; square floor / area = " << square_scan.min_value / square_scan.area;
  out.require(lambda_star.has_value(), "disk failure detected");
  out.require(std::abs(star - j11) < 1e-4, "lambda* within 1e-4");
  out.require(disk_scan.min_value < 1e-8, "min M < 1e-8");
  out.require(confirm < 1e-12, "F(lambda*) < 1e-12");
  out.require(square_scan.min_value > 1e-3 * square_scan.area, "square floor > 1e-3 area");
  report(7, "Pompeiu round trip", out);
}

// 8. Invariance of F, M(lambda) and Q(v, v) under rigid motions.
void rigid_motions(double j11) {
  Outcome out;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> offset(-3.0, 3.0), angle(0.0, 2 * kPi);
  const auto shape = wobbly();
  const auto kernel = RadialKernel::bessel(j11);
  const auto gauss = RadialKernel::gaussian(0.7);
  const auto grid0 = sample_boundary(shape, 512);
  const double f0 = energy_spectral_value(shape, 2.0, 256, grid0);
  const double s0 = energy_spatial_value(gauss, interior_quadrature(shape, 128, 16));
  const double m0 = max_modulus(shape, 3.0, 128, grid0);
  const auto v = random_velocity(rng);
  const double q0 = hessian_form(kernel, grid0, NormalVelocity::from_angle(grid0, v), NormalVelocity::from_angle(grid0, v));
  double worst_f = 0.0, worst_m = 0.0, worst_q = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const double phi = angle(rng);
    const auto moved = rotate(translate(shape, Vector2d(offset(rng), offset(rng))), phi);
    const auto grid = sample_boundary(moved, 512);
    worst_f = std::max({worst_f, std::abs(energy_spectral_value(moved, 2.0, 256, grid) - f0),
                        std::abs(energy_spatial_value(gauss, interior_quadrature(moved, 128, 16)) - s0)});
    worst_m = std::max(worst_m, std::abs(max_modulus(moved, 3.0, 128, grid) - m0));
    // the velocity travels with the boundary: v(theta - phi) in the rotated frame
    const auto carried = NormalVelocity::from_angle(grid, [&](double t) { return v(t - phi); });
    worst_q = std::max(worst_q, std::abs(hessian_form(kernel, grid, carried, carried) - q0));
  }
  out.detail << " max change: F " << worst_f << ", M(lambda) " << worst_m << ", Q(v,v) " << worst_q;
  out.require(worst_f < 1e-9, "F invariant");
  out.require(worst_m < 1e-9, "M invariant");
  out.require(worst_q < 1e-9, "Q invariant");
  report(8, "rigid-motion invariance", out);
}

}  // namespace

int main() {
  const double j11 = bessel_zero(1, 1);
  bessel_suite(j11);
  critical_energy(j11);
  criticality(j11);
  gradient_check(j11);
  mode_spectrum(j11);
  flow_runs(j11);
  pompeiu_round_trip(j11);
  rigid_motions(j11);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
