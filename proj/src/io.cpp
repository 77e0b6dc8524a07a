#include "shapeopt/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace shapeopt {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  if (!j.at(key).is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

Eigen::VectorXd number_array(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const auto& a = j.at(key);
  if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw InputError(std::string("field '") + key + "' must hold numbers");
    v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  }
  return v;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

json to_json(const StarShape& shape) {
  return json{{"center", {shape.center().x(), shape.center().y()}},
              {"a0", shape.a0()},
              {"ak", to_vector(shape.ak())},
              {"bk", to_vector(shape.bk())}};
}

StarShape shape_from_json(const json& j) {
  if (!j.is_object()) throw InputError("shape must be a JSON object");
  const auto center = number_array(j, "center");
  if (center.size() != 2) throw InputError("shape center must have two components");
  try {
    return StarShape(center, number(j, "a0"), number_array(j, "ak"), number_array(j, "bk"));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const DegenerateShapeError& e) {
    throw InputError(e.what());
  }
}

json to_json(const RadialKernel& kernel) {
  return kernel.visit([](const auto& k) -> json {
    using K = std::decay_t<decltype(k)>;
    if constexpr (std::is_same_v<K, BesselKernel>)
      return {{"kind", "bessel"}, {"lambda", k.lambda()}, {"dim", k.dim()}};
    else if constexpr (std::is_same_v<K, GaussianKernel>)
      return {{"kind", "gaussian"}, {"sigma", k.sigma}};
    else
      return {{"kind", "constant"}, {"c", k.value}};
  });
}

RadialKernel kernel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InputError("kernel must be an object with a string 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "bessel") {
      int dim = 2;
      if (j.contains("dim")) {
        if (!j.at("dim").is_number_integer()) throw InputError("field 'dim' must be an integer");
        dim = j.at("dim").get<int>();
      }
      return RadialKernel::bessel(number(j, "lambda"), dim);
    }
    if (kind == "gaussian") return RadialKernel::gaussian(number(j, "sigma"));
    if (kind == "constant") return RadialKernel::constant(number(j, "c"));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown kernel kind '" + kind + "'");
}

json to_json(const EnergyReport& report) {
  return json{{"value", report.value},
              {"method", report.method == EnergyMethod::spatial ? "spatial" : "spectral"},
              {"n_boundary", report.n_boundary},
              {"n_interior", report.n_interior},
              {"n_directions", report.n_directions},
              {"error_estimate", report.error_estimate}};
}

json to_json(const HessianSpectrum& spectrum, double kernel_mode_tol) {
  json entries = json::array();
  for (const auto& e : spectrum.entries) {
    entries.push_back({{"k", e.k},
                       {"parity", std::string(to_string(e.parity))},
                       {"Q", e.value},
                       {"closed_form", e.closed_form},
                       {"kernel_mode", std::abs(e.value) < kernel_mode_tol}});
  }
  return json{{"R", spectrum.radius}, {"lambda", spectrum.lambda}, {"entries", entries}};
}

json scan_summary(const PompeiuScan& result, std::optional<double> failure_lambda) {
  json summary{{"argmin_lambda", result.argmin_lambda},
               {"min_value", result.min_value},
               {"failure", failure_lambda.has_value()}};
  if (failure_lambda) summary["lambda_star"] = *failure_lambda;
  return summary;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path.string() + "': " + e.what());
  }
}

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& trajectory) {
  int harmonics = 0;
  for (const auto& r : trajectory.records) harmonics = std::max(harmonics, r.shape.harmonics());
  out << "t,F,grad_sup,centroid_x,centroid_y,area,a0";
  for (int k = 1; k <= harmonics; ++k) out << ",ak_" << k;
  for (int k = 1; k <= harmonics; ++k) out << ",bk_" << k;
  out << '\n' << std::setprecision(17);
  for (const auto& r : trajectory.records) {
    out << r.t << ',' << r.energy << ',' << r.grad_sup << ',' << r.centroid.x() << ',' << r.centroid.y() << ','
        << r.area << ',' << r.shape.a0();
    for (int k = 0; k < harmonics; ++k) out << ',' << (k < r.shape.harmonics() ? r.shape.ak()(k) : 0.0);
    for (int k = 0; k < harmonics; ++k) out << ',' << (k < r.shape.harmonics() ? r.shape.bk()(k) : 0.0);
    out << '\n';
  }
}

void write_scan_csv(std::ostream& out, const PompeiuScan& result) {
  out << "lambda,M_of_lambda\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < result.lambdas.size(); ++i) out << result.lambdas(i) << ',' << result.max_modulus(i) << '\n';
}

std::string boundary_svg(const StarShape& shape, int n_points, double half_extent) {
  std::ostringstream svg;
  const double size = 400.0;
  const double s = size / (2.0 * half_extent);
  svg << std::fixed << std::setprecision(3);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << ' ' << size << "\">\n";
  svg << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (int j = 0; j < n_points; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n_points;
    const double r = shape.radius(theta);
    const double x = shape.center().x() + r * std::cos(theta);
    const double y = shape.center().y() + r * std::sin(theta);
    svg << (j ? " " : "") << (x + half_extent) * s << ',' << (half_extent - y) * s;
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace shapeopt
