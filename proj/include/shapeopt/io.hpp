#pragma once

// File formats.
//
//   shape      {"center":[x,y],"a0":v,"ak":[...],"bk":[...]}
//   kernel     {"kind":"bessel","lambda":v,"dim":2} | {"kind":"gaussian","sigma":v} | {"kind":"constant","c":v}
//   trajectory CSV  t,F,grad_sup,centroid_x,centroid_y,area,a0,ak_1..ak_K,bk_1..bk_K
//   scan       CSV lambda,M_of_lambda ; JSON {"argmin_lambda","min_value","failure"}

#include "shapeopt/energy.hpp"
#include "shapeopt/flow.hpp"
#include "shapeopt/geometry.hpp"
#include "shapeopt/kernel.hpp"
#include "shapeopt/pompeiu.hpp"
#include "shapeopt/shape_calculus.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace shapeopt {

/// Malformed or out-of-contract input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const StarShape& shape);
StarShape shape_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RadialKernel& kernel);
RadialKernel kernel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EnergyReport& report);
nlohmann::json to_json(const HessianSpectrum& spectrum, double kernel_mode_tol);
nlohmann::json scan_summary(const PompeiuScan& result, std::optional<double> failure_lambda);

/// Parses a JSON file; InputError with the parser diagnostic on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& trajectory);
void write_scan_csv(std::ostream& out, const PompeiuScan& result);

/// Boundary polyline of the shape as a standalone SVG document.
std::string boundary_svg(const StarShape& shape, int n_points = 512, double half_extent = 2.5);

}  // namespace shapeopt
