// shapeopt command-line front end.
//
// Exit codes: 0 ok, 2 invalid input, 3 numeric failure, 4 flow stall or degeneracy.

#include <shapeopt/shapeopt.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shapeopt;

namespace {

enum ExitCode { kOk = 0, kInput = 2, kNumeric = 3, kFlow = 4 };

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string command;
  std::string shape;
  std::string kernel;
  std::string out;
  std::string config;
  int resolution = 512;
  std::uint64_t seed = 0;
  std::vector<std::string> points;
};

struct Run {
  std::string command;
  StarShape shape = StarShape::disk(1.0);
  std::optional<RadialKernel> kernel;
  std::optional<fs::path> out;
  Resolution resolution;
  int n_boundary = 512;
  std::uint64_t seed = 0;
  json options = json::object();
  std::vector<Eigen::Vector2d> points;
};

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NumericError(std::string(what) + " is not finite");
}

// A config entry may hold the object itself or a path relative to the config file.
json inline_or_file(const json& entry, const fs::path& base) {
  if (entry.is_string()) return read_json_file(base / entry.get<std::string>());
  return entry;
}

template <class T>
T get_or(const json& object, const char* key, T fallback) {
  if (!object.contains(key)) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config field '") + key + "' has the wrong type");
  }
}

Eigen::Vector2d parse_point(const std::string& text) {
  std::istringstream in(text);
  double x = 0.0, y = 0.0;
  char comma = 0;
  if (!(in >> x >> comma >> y) || comma != ',' || !(in >> std::ws).eof())
    throw InputError("point '" + text + "' must have the form x,y");
  return {x, y};
}

Resolution resolution_from(int n) {
  if (n < 32 || n % 4 != 0) throw InputError("resolution must be a multiple of 4 and at least 32");
  if (n > 16384) throw InputError("resolution must not exceed 16384");
  return Resolution{n, n / 2, 32, n / 2};
}

Run load(const Flags& flags) {
  Run run;
  run.command = flags.command;
  json config = json::object();
  fs::path base = fs::current_path();
  if (!flags.config.empty()) {
    config = read_json_file(flags.config);
    if (!config.is_object()) throw InputError("config must be a JSON object");
    base = fs::path(flags.config).parent_path();
  }

  json shape_json;
  if (config.contains("shape"))
    shape_json = inline_or_file(config.at("shape"), base);
  else if (!flags.shape.empty())
    shape_json = read_json_file(flags.shape);
  else
    throw InputError("no shape given (use --shape or a config 'shape' entry)");
  run.shape = shape_from_json(shape_json);

  if (config.contains("kernel"))
    run.kernel = kernel_from_json(inline_or_file(config.at("kernel"), base));
  else if (!flags.kernel.empty())
    run.kernel = kernel_from_json(read_json_file(flags.kernel));

  if (config.contains("out"))
    run.out = config.at("out").get<std::string>();
  else if (!flags.out.empty())
    run.out = flags.out;

  run.n_boundary = get_or<int>(config, "resolution", flags.resolution);
  run.resolution = resolution_from(run.n_boundary);
  run.seed = get_or<std::uint64_t>(config, "seed", flags.seed);

  const auto section = config.find(run.command);
  if (section != config.end()) {
    if (!section->is_object()) throw InputError("config section '" + run.command + "' must be an object");
    run.options = *section;
  }

  if (run.options.contains("points")) {
    for (const auto& p : run.options.at("points")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw InputError("config points must be [x, y] pairs");
      run.points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  } else {
    for (const auto& text : flags.points) run.points.push_back(parse_point(text));
  }
  return run;
}

const RadialKernel& require_kernel(const Run& run) {
  if (!run.kernel) throw InputError("no kernel given (use --kernel or a config 'kernel' entry)");
  return *run.kernel;
}

void emit(const Run& run, const std::string& name, const std::string& text) {
  if (!run.out) {
    std::cout << text;
    return;
  }
  fs::create_directories(*run.out);
  std::ofstream file(*run.out / name);
  if (!file) throw InputError("cannot write '" + (*run.out / name).string() + "'");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_evaluate(const Run& run) {
  const auto& kernel = require_kernel(run);
  const auto& res = run.resolution;
  const auto quad = interior_quadrature(run.shape, res.n_theta, res.n_rho);
  const auto spatial = energy_spatial(run.shape, kernel, quad);
  check_finite(spatial.value, "spatial energy");
  json result{{"spatial", to_json(spatial)}, {"area", area(run.shape)}};
  if (const auto* bessel = kernel.planar_bessel()) {
    const auto spectral = energy_spectral(run.shape, bessel->lambda(), res.n_directions, sample_boundary(run.shape, res.n_boundary));
    check_finite(spectral.value, "spectral energy");
    result["spectral"] = to_json(spectral);
    result["difference"] = std::abs(spatial.value - spectral.value);
  }
  emit(run, "evaluate.json", dump(result));
  return kOk;
}

int cmd_potential(const Run& run) {
  const auto& kernel = require_kernel(run);
  if (run.points.empty()) throw InputError("potential needs at least one point (--point x,y or config 'points')");
  const auto quad = interior_quadrature(run.shape, run.resolution.n_theta, run.resolution.n_rho);
  json values = json::array();
  for (const auto& p : run.points) {
    const double u = potential(kernel, p, quad);
    check_finite(u, "potential");
    values.push_back({{"x", p.x()}, {"y", p.y()}, {"u", u}});
  }
  emit(run, "potential.json", dump(json{{"points", values}}));
  return kOk;
}

int cmd_grad(const Run& run) {
  const auto& kernel = require_kernel(run);
  const auto& res = run.resolution;
  const auto grid = sample_boundary(run.shape, res.n_boundary);
  const auto g = gradient_density(kernel, grid, interior_quadrature(run.shape, res.n_theta, res.n_rho));
  check_finite(g.sup_norm, "gradient density");
  json result{{"sup_norm", g.sup_norm},
              {"theta", std::vector<double>(grid.theta.data(), grid.theta.data() + grid.size())},
              {"g", std::vector<double>(g.values.data(), g.values.data() + g.values.size())}};
  emit(run, "grad.json", dump(result));
  return kOk;
}

FlowOptions flow_options(const Run& run) {
  FlowOptions options;
  const auto& o = run.options;
  options.dt0 = get_or(o, "dt0", options.dt0);
  options.max_steps = get_or(o, "max_steps", options.max_steps);
  options.grad_tol = get_or(o, "grad_tol", options.grad_tol);
  options.energy_tol = get_or(o, "energy_tol", options.energy_tol);
  options.recenter = get_or(o, "recenter", options.recenter);
  options.K_fit = get_or(o, "K_fit", options.K_fit);
  options.max_halvings = get_or(o, "max_halvings", options.max_halvings);
  options.resolution = run.resolution;
  try {
    options.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return options;
}

void write_flow_outputs(const Run& run, const FlowTrajectory& trajectory) {
  std::ostringstream csv;
  write_trajectory_csv(csv, trajectory);
  emit(run, "trajectory.csv", csv.str());
  if (run.out && !trajectory.records.empty())
    emit(run, "final_shape.json", dump(to_json(trajectory.final_record().shape)));
}

int cmd_flow(const Run& run) {
  const auto& kernel = require_kernel(run);
  const auto options = flow_options(run);
  const int svg_every = get_or(run.options, "svg_every", 0);
  if (svg_every < 0) throw InputError("svg_every must be nonnegative");
  if (svg_every > 0 && !run.out) throw InputError("SVG frames need an output directory");

  int index = 0;
  const auto observer = [&](const FlowRecord& record) {
    if (svg_every > 0 && index % svg_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%05d.svg", index);
      emit(run, name, boundary_svg(record.shape));
    }
    ++index;
  };
  try {
    const auto trajectory = run_flow(run.shape, kernel, options, observer);
    write_flow_outputs(run, trajectory);
    const auto stats = radius_statistics(trajectory.final_record().shape);
    std::cerr << "steps " << trajectory.records.size() - 1 << ", F " << trajectory.final_record().energy
              << ", radius mean " << stats.mean << ", std/mean " << stats.relative() << '\n';
  } catch (const FlowError& error) {
    write_flow_outputs(run, error.partial());
    std::cerr << "shapeopt: " << error.what() << '\n';
    return kFlow;
  }
  return kOk;
}

int cmd_spectrum(const Run& run) {
  const auto& kernel = require_kernel(run);
  const auto* bessel = kernel.planar_bessel();
  if (!bessel) throw InputError("spectrum needs a planar bessel kernel");
  double radius = get_or(run.options, "R", 0.0);
  if (radius == 0.0) {
    if (run.shape.harmonics() > 0 && (run.shape.ak().cwiseAbs().maxCoeff() > 0.0 || run.shape.bk().cwiseAbs().maxCoeff() > 0.0))
      throw InputError("spectrum is defined for disks; give a disk shape or 'R'");
    radius = run.shape.a0();
  }
  if (!(radius > 0.0)) throw InputError("spectrum radius must be positive");
  const int k_max = get_or(run.options, "k_max", 6);
  const double tol = get_or(run.options, "kernel_mode_tol", 1e-7);
  if (k_max < 0 || 4 * k_max > run.n_boundary) throw InputError("k_max must lie in [0, resolution / 4]");
  const auto spectrum = ball_mode_spectrum(radius, bessel->lambda(), k_max, run.n_boundary);
  for (const auto& e : spectrum.entries) check_finite(e.value, "mode value");
  emit(run, "spectrum.json", dump(to_json(spectrum, tol)));
  return kOk;
}

int cmd_scan(const Run& run) {
  const auto& o = run.options;
  const double lambda_min = get_or(o, "lambda_min", 1.0);
  const double lambda_max = get_or(o, "lambda_max", 20.0);
  const int n_lambda = get_or(o, "n_lambda", 191);
  const int n_directions = get_or(o, "n_directions", 128);
  const double tol = get_or(o, "tol", 1e-6);
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || !std::isfinite(lambda_max))
    throw InputError("scan needs 0 < lambda_min < lambda_max");
  if (n_lambda < 2 || n_lambda > 100000) throw InputError("n_lambda must lie in [2, 100000]");
  if (n_directions < 16 || n_directions > 8192) throw InputError("n_directions must lie in [16, 8192]");
  if (!(tol >= 0.0)) throw InputError("tol must be nonnegative");

  const auto grid = sample_boundary(run.shape, run.n_boundary);
  const auto result = scan(run.shape, lambda_min, lambda_max, n_lambda, n_directions, grid);
  check_finite(result.min_value, "scan minimum");
  const auto failure = detects_failure(result, run.shape, grid, tol, run.resolution.n_directions);
  std::ostringstream csv;
  write_scan_csv(csv, result);
  if (run.out) emit(run, "scan.csv", csv.str());
  emit(run, "scan.json", dump(scan_summary(result, failure)));
  return kOk;
}

int dispatch(const Run& run) {
  if (run.command == "evaluate") return cmd_evaluate(run);
  if (run.command == "potential") return cmd_potential(run);
  if (run.command == "grad") return cmd_grad(run);
  if (run.command == "flow") return cmd_flow(run);
  if (run.command == "spectrum") return cmd_spectrum(run);
  return cmd_scan(run);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape optimization of kernel energies on star-shaped planar domains"};
  app.require_subcommand(1);
  Flags flags;

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"evaluate", "spatial and spectral energy of a shape"},
      {"potential", "interior potential at given points"},
      {"grad", "shape gradient density on the boundary"},
      {"flow", "antigradient flow; writes trajectory.csv and final_shape.json"},
      {"spectrum", "Hessian mode spectrum of the disk"},
      {"scan", "search for a circle on which the indicator transform vanishes"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--shape", flags.shape, "shape JSON file");
    sub->add_option("--kernel", flags.kernel, "kernel JSON file");
    sub->add_option("--out", flags.out, "output directory (stdout when omitted)");
    sub->add_option("--config", flags.config, "run config JSON; its entries override flags");
    sub->add_option("--resolution", flags.resolution, "boundary nodes N; interior N/2 x 32, N/2 directions");
    sub->add_option("--seed", flags.seed, "random seed");
    if (std::string(name) == "potential") sub->add_option("--point", flags.points, "evaluation point x,y (repeatable)");
    sub->callback([&flags, name = std::string(name)] { flags.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    const Run run = load(flags);
    return dispatch(run);
  } catch (const InputError& e) {
    std::cerr << "shapeopt: input error: " << e.what() << '\n';
    return kInput;
  } catch (const DegenerateShapeError& e) {
    std::cerr << "shapeopt: input error: " << e.what() << '\n';
    return kInput;
  } catch (const json::exception& e) {
    std::cerr << "shapeopt: input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "shapeopt: input error: " << e.what() << '\n';
    return kInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "shapeopt: input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "shapeopt: numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
}
