#pragma once

// Star-shaped planar domains described by a truncated Fourier radius
//
//   r(theta) = a0 + sum_{k=1..K} (ak_k cos k theta + bk_k sin k theta)
//
// about a center point, plus the boundary and interior quadratures built on them.

#include <Eigen/Core>

#include <stdexcept>

namespace shapeopt {

inline constexpr int kMaxHarmonics = 128;
inline constexpr int kPositivityGrid = 4096;

/// Raised when a radius function reaches zero or below.
class DegenerateShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadiusJet {
  double value;
  double first;
  double second;
};

class StarShape {
 public:
  /// Throws std::invalid_argument on size/finiteness violations and
  /// DegenerateShapeError if min r <= 0 on the positivity grid.
  StarShape(Eigen::Vector2d center, double a0, Eigen::VectorXd ak, Eigen::VectorXd bk);

  static StarShape disk(double radius, const Eigen::Vector2d& center = Eigen::Vector2d::Zero());

  const Eigen::Vector2d& center() const { return center_; }
  double a0() const { return a0_; }
  const Eigen::VectorXd& ak() const { return ak_; }
  const Eigen::VectorXd& bk() const { return bk_; }
  int harmonics() const { return static_cast<int>(ak_.size()); }

  double radius(double theta) const;
  RadiusJet radius_jet(double theta) const;
  double min_radius() const { return min_radius_; }

 private:
  Eigen::Vector2d center_;
  double a0_;
  Eigen::VectorXd ak_;
  Eigen::VectorXd bk_;
  double min_radius_;
};

/// Uniform-angle boundary sample; column j of points/normals belongs to theta(j).
struct BoundaryGrid {
  Eigen::VectorXd theta;
  Eigen::Matrix2Xd points;
  Eigen::Matrix2Xd normals;   // outward unit normals
  Eigen::VectorXd weights;    // arclength weights |x'(theta)| * 2 pi / N
  Eigen::VectorXd curvature;
  Eigen::VectorXd radius;     // r(theta_j)
  Eigen::VectorXd speed;      // |x'(theta_j)| = sqrt(r^2 + r'^2)

  Eigen::Index size() const { return theta.size(); }
};

struct InteriorQuadrature {
  Eigen::Matrix2Xd nodes;
  Eigen::VectorXd weights;
  int n_theta = 0;
  int n_rho = 0;

  Eigen::Index size() const { return weights.size(); }
};

/// n >= 16 and even.
BoundaryGrid sample_boundary(const StarShape& shape, int n);

/// Trapezoid in theta times Gauss-Legendre in rho on [0, r(theta)].
InteriorQuadrature interior_quadrature(const StarShape& shape, int n_theta, int n_rho);

double area(const StarShape& shape);
Eigen::Vector2d centroid(const StarShape& shape);
double perimeter(const BoundaryGrid& grid);

StarShape translate(const StarShape& shape, const Eigen::Vector2d& offset);
/// Rotation about the origin.
StarShape rotate(const StarShape& shape, double angle);
/// Dilation about the origin.
StarShape scale(const StarShape& shape, double factor);

struct RadiusFit {
  StarShape shape;
  double max_residual;
};

/// Least-squares Fourier fit of the radius of `points` seen from `center`.
/// The points must wind once counterclockwise around the center with
/// strictly increasing polar angle; otherwise DegenerateShapeError.
RadiusFit fit_radius(const Eigen::Matrix2Xd& points, const Eigen::Vector2d& center, int harmonics);

StarShape make_ellipse(double semi_x, double semi_y, int harmonics);
/// Fourier fit of the axis-aligned square with the given side length.
StarShape make_rounded_square(double side, int harmonics);
/// Same shape dilated about its center to the requested area.
StarShape with_area(const StarShape& shape, double target_area);

}  // namespace shapeopt
