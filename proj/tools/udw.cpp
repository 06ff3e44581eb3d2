#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "udw/config.hpp"
#include "udw/sweep.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitConvergence = 3;

using udw::sweep::Format;

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw udw::InvalidInput("format must be csv or json");
}

udw::config::RunConfig load_config(const std::string& path) {
  return path.empty() ? udw::config::RunConfig{} : udw::config::load(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signalling estimators for pairs of Unruh-DeWitt detectors"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(udw::sweep::version()));

  std::string config_path;
  std::optional<int> dim;
  std::string axis = "L";
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  std::string spacing = "linear";
  double tol = 1e-9;
  std::string format = "csv";
  std::string output;
  std::string model = "auto";
  unsigned threads = 0;
  bool record_timing = false;
  int figure = 0;

  auto* sweep = app.add_subcommand("sweep", "Evaluate an estimator over a parameter grid");
  sweep->add_option("--config", config_path, "JSON scenario config");
  sweep->add_option("--dim", dim, "Spatial dimensions (overrides the config)")->check(CLI::Range(1, 3));
  sweep->add_option("--axis", axis, "Swept parameter")
      ->check(CLI::IsMember({"L", "sigma", "lambda_cutoff", "omega"}));
  sweep->add_option("--min", min, "Grid start")->required();
  sweep->add_option("--max", max, "Grid end")->required();
  sweep->add_option("--points", points, "Number of grid points (>= 2)")->required();
  sweep->add_option("--spacing", spacing, "Grid spacing")->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--model", model, "Estimator family")
      ->check(CLI::IsMember({"auto", "smearing", "cutoff", "rwa"}));

  auto* fig = app.add_subcommand("fig", "Write the dataset behind one figure");
  fig->add_option("n", figure, "Figure number")->required()->check(CLI::Range(1, 5));

  auto* matrix = app.add_subcommand("signal-matrix", "Print the signal matrix of a two-detector config");
  matrix->add_option("--config", config_path, "JSON scenario config")->required();

  for (auto* sub : {sweep, fig, matrix}) {
    sub->add_option("--tol", tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output", output,
                    sub == fig ? "Output directory (default: current directory)" : "Output file (default: stdout)");
  }
  for (auto* sub : {sweep, fig}) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "Worker threads (0: all cores)");
    sub->add_flag("--record-timing", record_timing, "Record wall time in the manifest");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&start] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (*matrix) {
      const auto m = udw::sweep::signal_matrix(load_config(config_path), tol);
      const std::string text = udw::sweep::format_signal_matrix(m);
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output, std::ios::binary);
        if (!(out << text)) throw udw::InvalidInput("cannot write " + output);
      }
      return 0;
    }

    const Format fmt = parse_format(format);
    if (*fig) {
      auto data = udw::sweep::figure(figure, tol, threads);
      if (record_timing) data.manifest.wall_seconds = elapsed();
      udw::sweep::write_figure(figure, data, fmt, output.empty() ? "." : output);
      return 0;
    }

    udw::sweep::SweepRequest req;
    req.config = load_config(config_path);
    if (dim) req.config.scenario.dim = udw::make_dimension(*dim);
    req.axis = udw::sweep::parse_axis(axis);
    req.min = min;
    req.max = max;
    req.points = points;
    req.spacing = spacing == "log" ? udw::sweep::Spacing::log : udw::sweep::Spacing::linear;
    req.tol = tol;
    req.model = udw::sweep::parse_model(model);
    auto data = udw::sweep::run_sweep(req, threads);
    if (record_timing) data.manifest.wall_seconds = elapsed();
    if (output.empty()) {
      if (fmt == Format::json) {
        std::cout << udw::sweep::format_json(data);
      } else {
        std::cout << udw::sweep::format_csv(data.series.front().rows);
      }
    } else {
      udw::sweep::write_sweep(data, fmt, output);
    }
    return 0;
  } catch (const udw::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const udw::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
