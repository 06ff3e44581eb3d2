#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "udw/config.hpp"
#include "udw/smearing.hpp"

/// Parameter sweeps, figure datasets and their serialization.
///
/// Grid points may run on several threads; rows always come back in grid order
/// and every value is independent of the thread count.
namespace udw::sweep {

enum class Axis { separation, sigma, lambda_cutoff, omega };
enum class Model { automatic, smearing, cutoff, rwa };
enum class Spacing { linear, log };
enum class Format { csv, json };

Axis parse_axis(std::string_view name);
std::string_view axis_name(Axis axis);
Model parse_model(std::string_view name);
std::string_view model_name(Model model);

struct SweepRow {
  std::string parameter;
  double value = 0.0;
  double estimator = 0.0;
  double abs_error = 0.0;
  int dim = 3;
};

/// One named curve of a dataset.
struct Series {
  std::string name;
  std::vector<SweepRow> rows;
};

struct RunManifest {
  std::string command;
  nlohmann::json config;
  nlohmann::json parameters = nlohmann::json::object();
  double tolerance = 0.0;
  std::vector<std::string> notes;
  nlohmann::json results = nlohmann::json::object();
  std::optional<double> wall_seconds;
};

struct SweepRequest {
  config::RunConfig config;
  Axis axis = Axis::separation;
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  Spacing spacing = Spacing::linear;
  double tol = 1e-9;
  Model model = Model::automatic;
};

struct Dataset {
  std::vector<Series> series;
  RunManifest manifest;
};

std::string_view version();

/// Inclusive grid; needs at least two points, and positive endpoints for log spacing.
std::vector<double> make_grid(double min, double max, int points, Spacing spacing);

/// Model actually used for `model` on `axis` given the scenario.
Model resolve(Model model, Axis axis, const ScenarioSpec& spec);

/// Coupling-stripped estimator for one scenario under a concrete model.
smearing::EstimatorValue evaluate(const ScenarioSpec& spec, Model model, double tol);

/// 0 selects the hardware concurrency.
Dataset run_sweep(const SweepRequest& request, unsigned threads = 0);

/// Dataset behind figure n (1..5).
Dataset figure(int n, double tol, unsigned threads = 0);

/// Signal matrix of the configured two-detector scenario.
SignalMatrix signal_matrix(const config::RunConfig& config, double tol);

std::string format_csv(const std::vector<SweepRow>& rows);
std::string format_json(const Dataset& data);
std::string format_manifest(const RunManifest& manifest);
std::string format_signal_matrix(const SignalMatrix& m);

/// Writes a sweep to `path` (CSV plus `<path>.manifest.json`, or a single JSON document).
void write_sweep(const Dataset& data, Format format, const std::filesystem::path& path);

/// Writes figure n into directory `dir` as fig<n>_<series>.csv plus fig<n>_manifest.json,
/// or as a single fig<n>.json.
void write_figure(int n, const Dataset& data, Format format, const std::filesystem::path& dir);

}  // namespace udw::sweep
