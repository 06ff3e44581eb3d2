#include "udw/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "udw/commutators.hpp"
#include "udw/dynamics.hpp"
#include "udw/rwa.hpp"
#include "udw/uvcut.hpp"

#ifndef UDW_VERSION
#define UDW_VERSION "unknown"
#endif

namespace udw::sweep {
namespace {

using nlohmann::json;
using smearing::EstimatorValue;

constexpr const char* kArtifact = "udw_signalling";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short label for series names: 0.02 -> "0.02", 1000 -> "1000".
std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F&& f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  unsigned count = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Task {
  std::size_t series;
  std::function<std::vector<SweepRow>()> run;
};

std::vector<Series> run_tasks(const std::vector<std::string>& names, const std::vector<Task>& tasks,
                              unsigned threads) {
  const auto results = parallel_map<std::vector<SweepRow>>(
      tasks.size(), threads, [&tasks](std::size_t i) { return tasks[i].run(); });
  std::vector<Series> out;
  for (const auto& n : names) out.push_back({n, {}});
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto& rows = out[tasks[i].series].rows;
    rows.insert(rows.end(), results[i].begin(), results[i].end());
  }
  return out;
}

void apply(ScenarioSpec& spec, Axis axis, double v) {
  switch (axis) {
    case Axis::separation:
      spec.separation = v;
      break;
    case Axis::sigma:
      spec.smearing = v;
      break;
    case Axis::lambda_cutoff:
      spec.cutoff = v;
      break;
    case Axis::omega:
      spec.gap_a = v;
      spec.gap_b = v;
      break;
  }
}

// One grid point of `base` along `axis` as a task.
Task point_task(std::size_t series, const ScenarioSpec& base, Axis axis, double v, Model model,
                double tol) {
  return {series, [=] {
            ScenarioSpec spec = base;
            apply(spec, axis, v);
            const auto e = evaluate(spec, model, tol);
            return std::vector<SweepRow>{
                {std::string(axis_name(axis)), v, e.value, e.est_abs_error, spatial_dims(spec.dim)}};
          }};
}

ScenarioSpec delta_spec(Dimension dim, double L, double sigma) {
  ScenarioSpec s;
  s.dim = dim;
  s.separation = L;
  s.time_gap = 1.0;
  s.smearing = sigma;
  return s;
}

std::vector<double> fraction_grid(double span, int n) {
  std::vector<double> g;
  for (int i = 1; i <= n; ++i) g.push_back(span * i / n);
  return g;
}

const std::vector<double> kFigureSigmas = {0.02, 0.05, 0.1, 0.2};
constexpr Dimension kDims[] = {Dimension::one, Dimension::two, Dimension::three};

RunManifest figure_manifest(int n, double tol) {
  RunManifest m;
  m.command = "fig " + std::to_string(n);
  m.config = json::object();
  m.tolerance = tol;
  m.notes.push_back("all lengths and times in units of the time gap");
  return m;
}

Dataset figure1(double tol, unsigned threads) {
  Dataset d{{}, figure_manifest(1, tol)};
  std::vector<std::string> names;
  std::vector<Task> tasks;
  for (Dimension dim : kDims) {
    for (double sigma : kFigureSigmas) {
      names.push_back("dim" + std::to_string(spatial_dims(dim)) + "_sigma" + label(sigma));
      for (double L : fraction_grid(2.0, 120)) {
        tasks.push_back(point_task(names.size() - 1, delta_spec(dim, L, sigma), Axis::separation, L,
                                   Model::smearing, tol));
      }
    }
  }
  d.series = run_tasks(names, tasks, threads);
  d.manifest.parameters = {{"switching", "delta"}, {"sigma", kFigureSigmas},
                           {"L_grid", "2 i / 120, i = 1..120"}};
  return d;
}

Dataset figure2(double tol, unsigned threads) {
  Dataset d{{}, figure_manifest(2, tol)};
  std::vector<std::string> names;
  std::vector<Task> tasks;
  const auto top = make_grid(0.01, 1.0, 60, Spacing::log);
  const auto bottom = make_grid(0.01, 2.0, 60, Spacing::log);
  for (Dimension dim : kDims) {
    names.push_back("top_dim" + std::to_string(spatial_dims(dim)));
    for (double sigma : top) {
      tasks.push_back(
          point_task(names.size() - 1, delta_spec(dim, 1.1, sigma), Axis::sigma, sigma, Model::smearing, tol));
    }
  }
  for (Dimension dim : kDims) {
    names.push_back("bottom_dim" + std::to_string(spatial_dims(dim)));
    for (double sigma : bottom) {
      tasks.push_back(point_task(names.size() - 1, delta_spec(dim, 1.0 + 2.0 * sigma, sigma), Axis::sigma,
                                 sigma, Model::smearing, tol));
    }
  }
  d.series = run_tasks(names, tasks, threads);
  d.manifest.parameters = {{"switching", "delta"},
                           {"top", {{"L", 1.1}, {"sigma_grid", "60 log points on [0.01, 1]"}}},
                           {"bottom", {{"L", "1 + 2 sigma"}, {"sigma_grid", "60 log points on [0.01, 2]"}}}};
  return d;
}

Dataset figure3(double tol, unsigned threads) {
  Dataset d{{}, figure_manifest(3, tol)};
  constexpr double T = 0.1;
  std::vector<std::string> names;
  std::vector<Task> tasks;
  auto add = [&](double sigma) {
    for (double L : fraction_grid(2.0, 400)) {
      ScenarioSpec s = delta_spec(Dimension::three, L, sigma);
      s.duration = T;
      tasks.push_back(point_task(names.size() - 1, s, Axis::separation, L, Model::smearing, tol));
    }
  };
  for (double sigma : kFigureSigmas) {
    names.push_back("sigma" + label(sigma));
    add(sigma);
  }
  names.push_back("pointlike");
  add(0.0);
  d.series = run_tasks(names, tasks, threads);
  d.manifest.parameters = {{"switching", "top-hat"}, {"duration", T}, {"sigma", kFigureSigmas},
                           {"L_grid", "2 i / 400, i = 1..400"}};
  return d;
}

Dataset figure4(double tol, unsigned threads) {
  Dataset d{{}, figure_manifest(4, tol)};
  constexpr double kScatterL = 1.4;
  const std::vector<std::vector<double>> cutoffs = {{5, 10, 20, 1000}, {25, 50, 100}, {25, 50, 100}};
  const auto lambda_grid = make_grid(25.0, 1000.0, 24, Spacing::log);
  std::vector<std::string> names;
  std::vector<Task> tasks;
  for (Dimension dim : kDims) {
    const int n = spatial_dims(dim);
    for (double cutoff : cutoffs[n - 1]) {
      names.push_back("dim" + std::to_string(n) + "_lambda" + label(cutoff));
      for (double L : fraction_grid(2.0, 120)) {
        ScenarioSpec s = delta_spec(dim, L, 0.0);
        s.cutoff = cutoff;
        tasks.push_back(point_task(names.size() - 1, s, Axis::separation, L, Model::cutoff, tol));
      }
    }
  }
  std::vector<std::size_t> envelope_series;
  for (Dimension dim : kDims) {
    const int n = spatial_dims(dim);
    names.push_back("scatter_dim" + std::to_string(n));
    for (double cutoff : lambda_grid) {
      tasks.push_back(point_task(names.size() - 1, delta_spec(dim, kScatterL, 0.0), Axis::lambda_cutoff,
                                 cutoff, Model::cutoff, tol));
    }
    names.push_back("envelope_dim" + std::to_string(n));
    envelope_series.push_back(names.size() - 1);
    tasks.push_back({names.size() - 1, [=] {
                       std::vector<SweepRow> rows;
                       // each window sample is individually within tol
                       const double err = dim == Dimension::two ? tol : 0.0;
                       for (const auto& [c, e] : uvcut::envelope_over_lambda(dim, 1.0, kScatterL, lambda_grid, tol)) {
                         rows.push_back({"lambda_cutoff", c, e, err, n});
                       }
                       return rows;
                     }});
  }
  d.series = run_tasks(names, tasks, threads);
  json fits = json::object();
  for (std::size_t k = 0; k < envelope_series.size(); ++k) {
    std::vector<std::pair<double, double>> samples;
    for (const auto& r : d.series[envelope_series[k]].rows) samples.emplace_back(r.value, r.estimator);
    const auto fit = uvcut::fit_decay(samples);
    fits["dim" + std::to_string(k + 1)] = {{"alpha", fit.alpha}, {"r_squared", fit.r_squared}};
  }
  d.manifest.results["decay_fits"] = fits;
  d.manifest.parameters = {{"switching", "delta"},
                           {"smearing", 0.0},
                           {"cutoffs", {{"dim1", cutoffs[0]}, {"dim2", cutoffs[1]}, {"dim3", cutoffs[2]}}},
                           {"L_grid", "2 i / 120, i = 1..120"},
                           {"scatter_L", kScatterL},
                           {"lambda_grid", "24 log points on [25, 1000]"}};
  d.manifest.notes.push_back(
      "envelope: maximum of 32 samples over [lambda, lambda + pi / |L - 1|]; decay fit E ~ lambda^-alpha");
  return d;
}

Dataset figure5(double tol, unsigned threads) {
  Dataset d{{}, figure_manifest(5, tol)};
  ScenarioSpec base;
  base.dim = Dimension::three;
  base.time_gap = 1.0;
  base.duration = 1.0;
  base.gap_a = 1.0;
  base.gap_b = 1.0;
  std::vector<std::string> names{"top", "bottom"};
  std::vector<Task> tasks;
  for (int i = 1; i <= 200; ++i) {
    const double L = 5.0 * (i - 0.5) / 200.0;
    tasks.push_back(point_task(0, base, Axis::separation, L, Model::rwa, tol));
  }
  ScenarioSpec far = base;
  far.separation = 3.0 * base.duration + base.time_gap;
  for (double omega : make_grid(0.1, 100.0, 60, Spacing::log)) {
    tasks.push_back(point_task(1, far, Axis::omega, omega, Model::rwa, tol));
  }
  d.series = run_tasks(names, tasks, threads);
  d.manifest.parameters = {{"top", {{"omega", 1.0}, {"duration", 1.0}, {"time_gap", 1.0},
                                    {"L_grid", "5 (i - 1/2) / 200, i = 1..200"}}},
                           {"bottom", {{"duration", 1.0}, {"time_gap", 1.0}, {"L", far.separation},
                                       {"omega_grid", "60 log points on [0.1, 100]"}}}};
  d.manifest.notes.push_back(
      "top panel: omega = 1, T = 1/omega, time gap = 1/omega; L axis in units of T (equal to 1/omega)");
  d.manifest.notes.push_back("inside the light-contact band the pole is taken as a principal value");
  return d;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << content;
    out.close();
    if (!out) {
      std::filesystem::remove(tmp);
      throw InvalidInput("failed writing " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_all(const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  std::vector<std::filesystem::path> done;
  try {
    for (const auto& [p, c] : files) {
      write_atomic(p, c);
      done.push_back(p);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : done) std::filesystem::remove(p, ec);
    throw;
  }
}

}  // namespace

std::string_view version() { return UDW_VERSION; }

Axis parse_axis(std::string_view name) {
  if (name == "L") return Axis::separation;
  if (name == "sigma") return Axis::sigma;
  if (name == "lambda_cutoff") return Axis::lambda_cutoff;
  if (name == "omega") return Axis::omega;
  throw InvalidInput("axis must be one of L, sigma, lambda_cutoff, omega");
}

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::separation:
      return "L";
    case Axis::sigma:
      return "sigma";
    case Axis::lambda_cutoff:
      return "lambda_cutoff";
    case Axis::omega:
      return "omega";
  }
  return "";
}

Model parse_model(std::string_view name) {
  if (name == "auto") return Model::automatic;
  if (name == "smearing") return Model::smearing;
  if (name == "cutoff") return Model::cutoff;
  if (name == "rwa") return Model::rwa;
  throw InvalidInput("model must be one of auto, smearing, cutoff, rwa");
}

std::string_view model_name(Model model) {
  switch (model) {
    case Model::automatic:
      return "auto";
    case Model::smearing:
      return "smearing";
    case Model::cutoff:
      return "cutoff";
    case Model::rwa:
      return "rwa";
  }
  return "";
}

std::vector<double> make_grid(double min, double max, int points, Spacing spacing) {
  if (points < 2) throw InvalidInput("grid needs at least 2 points");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw InvalidInput("grid needs finite min < max");
  }
  if (spacing == Spacing::log && !(min > 0.0)) throw InvalidInput("log grid needs min > 0");
  std::vector<double> g(points);
  const double last = points - 1;
  for (int i = 0; i < points; ++i) {
    const double f = i / last;
    g[i] = spacing == Spacing::linear ? min + (max - min) * f
                                      : std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
  }
  g.front() = min;
  g.back() = max;
  return g;
}

Model resolve(Model model, Axis axis, const ScenarioSpec& spec) {
  if (model != Model::automatic) return model;
  if (spec.cutoff || axis == Axis::lambda_cutoff) return Model::cutoff;
  if (axis == Axis::omega) return Model::rwa;
  return Model::smearing;
}

EstimatorValue evaluate(const ScenarioSpec& spec, Model model, double tol) {
  validate(spec);
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  EstimatorValue e;
  switch (model) {
    case Model::automatic:
      throw InvalidInput("model must be resolved before evaluation");
    case Model::smearing:
      if (spec.cutoff) throw InvalidInput("smearing model does not combine with a cutoff");
      if (spec.delta_switching()) {
        e = smearing::estimator_gaussian(spec.dim, spec.time_gap, spec.separation, spec.smearing, tol);
      } else {
        if (spec.dim != Dimension::three) throw InvalidInput("top-hat estimator requires dim = 3");
        e.value = spec.smearing == 0.0
                      ? smearing::tophat_pointlike_limit(spec.time_gap, spec.separation, spec.duration)
                      : smearing::estimator_tophat_3d(spec.time_gap, spec.separation, spec.smearing,
                                                      spec.duration);
      }
      break;
    case Model::cutoff:
      if (!spec.cutoff) throw InvalidInput("cutoff model needs a cutoff");
      if (spec.smearing != 0.0) throw InvalidInput("cutoff model requires smearing = 0");
      if (!spec.delta_switching()) throw InvalidInput("cutoff model requires delta switching");
      e = uvcut::estimator_cutoff(spec.dim, spec.time_gap, spec.separation, *spec.cutoff, tol);
      break;
    case Model::rwa:
      if (spec.delta_switching()) throw InvalidInput("rwa model requires duration > 0");
      if (spec.smearing != 0.0 || spec.cutoff) throw InvalidInput("rwa model is pointlike without cutoff");
      if (spec.dim != Dimension::three) throw InvalidInput("rwa model requires dim = 3");
      if (spec.gap_a != spec.gap_b) throw InvalidInput("rwa model requires gap_a == gap_b");
      e = rwa::estimator_rwa({spec.time_gap, spec.duration, spec.separation, spec.gap_a}, tol);
      break;
  }
  if (!(e.est_abs_error <= tol)) {
    throw ConvergenceError("estimated error " + fmt(e.est_abs_error) + " exceeds tolerance " + fmt(tol));
  }
  return e;
}

Dataset run_sweep(const SweepRequest& request, unsigned threads) {
  validate(request.config.scenario);
  const auto grid = make_grid(request.min, request.max, request.points, request.spacing);
  const Model model = resolve(request.model, request.axis, request.config.scenario);
  std::vector<Task> tasks;
  for (double v : grid) {
    tasks.push_back(point_task(0, request.config.scenario, request.axis, v, model, request.tol));
  }
  Dataset d;
  d.series = run_tasks({"sweep"}, tasks, threads);
  RunManifest& m = d.manifest;
  m.command = "sweep";
  m.config = config::to_json(request.config);
  m.tolerance = request.tol;
  m.parameters = {{"axis", axis_name(request.axis)},
                  {"min", request.min},
                  {"max", request.max},
                  {"points", request.points},
                  {"spacing", request.spacing == Spacing::linear ? "linear" : "log"},
                  {"model", model_name(model)}};
  return d;
}

Dataset figure(int n, double tol, unsigned threads) {
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  switch (n) {
    case 1:
      return figure1(tol, threads);
    case 2:
      return figure2(tol, threads);
    case 3:
      return figure3(tol, threads);
    case 4:
      return figure4(tol, threads);
    case 5:
      return figure5(tol, threads);
    default:
      throw InvalidInput("figure number must be 1..5");
  }
}

SignalMatrix signal_matrix(const config::RunConfig& config, double tol) {
  const ScenarioSpec& s = validate(config.scenario);
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  const double t_a = config.t_a;
  if (!s.delta_switching()) {
    if (s.cutoff) throw InvalidInput("top-hat switching with a cutoff is not supported");
    const auto kernel = s.smearing > 0.0 ? dynamics::CausalKernel::gaussian(s.dim, s.separation, s.smearing)
                                         : dynamics::CausalKernel::pointlike(s.dim, s.separation);
    return dynamics::signal_matrix_general(s, config.state_a, config.state_b, kernel, tol, t_a);
  }
  const double t_b = t_a + s.time_gap;
  double c = 0.0;
  if (s.smearing > 0.0) {
    if (s.cutoff) throw InvalidInput("smearing does not combine with a cutoff");
    const smearing::SmearedKernel k{s.dim, s.separation, s.smearing};
    switch (s.dim) {
      case Dimension::one:
        c = smearing::c1(k, t_a, t_b);
        break;
      case Dimension::two:
        c = smearing::c2(k, t_a, t_b, tol).value;
        break;
      case Dimension::three:
        c = smearing::c3(k, t_a, t_b);
        break;
    }
  } else if (s.cutoff) {
    const commutators::Event ea{t_a, std::vector<double>(spatial_dims(s.dim), 0.0)};
    commutators::Event eb{t_b, std::vector<double>(spatial_dims(s.dim), 0.0)};
    eb.x[0] = s.separation;
    complex value;
    switch (s.dim) {
      case Dimension::one:
        value = commutators::commutator_1d_cutoff(ea, eb, *s.cutoff).value;
        break;
      case Dimension::two:
        value = commutators::commutator_2d_cutoff(ea, eb, *s.cutoff, tol).value;
        break;
      case Dimension::three:
        value = commutators::commutator_3d_cutoff(ea, eb, *s.cutoff).value;
        break;
    }
    c = (complex(0.0, 1.0) * value).real();
  } else {
    if (s.dim == Dimension::three) {
      throw InvalidInput("pointlike 3+1 delta switching has a distributional commutator; use duration > 0");
    }
    c = dynamics::CausalKernel::pointlike(s.dim, s.separation)(t_a, t_b);
  }
  return dynamics::signal_matrix_delta(s, config.state_a, config.state_b, c, t_a);
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out = "parameter,value,estimator,abs_error,dim\n";
  for (const auto& r : rows) {
    out += r.parameter + "," + fmt(r.value) + "," + fmt(r.estimator) + "," + fmt(r.abs_error) + "," +
           std::to_string(r.dim) + "\n";
  }
  return out;
}

std::string format_manifest(const RunManifest& m) {
  json j{{"artifact", kArtifact},
         {"version", version()},
         {"command", m.command},
         {"config", m.config},
         {"parameters", m.parameters},
         {"tolerance", m.tolerance},
         {"notes", m.notes},
         {"results", m.results}};
  if (m.wall_seconds) j["wall_time_seconds"] = *m.wall_seconds;
  return j.dump(2) + "\n";
}

std::string format_json(const Dataset& data) {
  std::string manifest = format_manifest(data.manifest);
  manifest.pop_back();
  std::string indented;
  for (char ch : manifest) {
    indented += ch;
    if (ch == '\n') indented += "  ";
  }
  std::string out = "{\n  \"manifest\": " + indented + ",\n  \"series\": [";
  for (std::size_t i = 0; i < data.series.size(); ++i) {
    const auto& s = data.series[i];
    out += i ? ",\n" : "\n";
    out += "    {\n      \"name\": " + json(s.name).dump() + ",\n      \"rows\": [";
    for (std::size_t k = 0; k < s.rows.size(); ++k) {
      const auto& r = s.rows[k];
      out += k ? ",\n" : "\n";
      out += "        {\"parameter\": " + json(r.parameter).dump() + ", \"value\": " + fmt(r.value) +
             ", \"estimator\": " + fmt(r.estimator) + ", \"abs_error\": " + fmt(r.abs_error) +
             ", \"dim\": " + std::to_string(r.dim) + "}";
    }
    out += s.rows.empty() ? "]\n    }" : "\n      ]\n    }";
  }
  out += data.series.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string format_signal_matrix(const SignalMatrix& m) {
  auto entry = [&m](int r, int c) {
    return "[" + fmt(m.entries(r, c).real()) + ", " + fmt(m.entries(r, c).imag()) + "]";
  };
  return "{\n  \"entries\": [\n    [" + entry(0, 0) + ", " + entry(0, 1) + "],\n    [" + entry(1, 0) + ", " +
         entry(1, 1) + "]\n  ],\n  \"trace_residual\": " + fmt(m.trace_residual()) +
         ",\n  \"hermiticity_residual\": " + fmt(m.hermiticity_residual()) + "\n}\n";
}

void write_sweep(const Dataset& data, Format format, const std::filesystem::path& path) {
  if (format == Format::json) {
    write_all({{path, format_json(data)}});
    return;
  }
  std::vector<SweepRow> rows;
  for (const auto& s : data.series) rows.insert(rows.end(), s.rows.begin(), s.rows.end());
  auto manifest = path;
  manifest += ".manifest.json";
  write_all({{path, format_csv(rows)}, {manifest, format_manifest(data.manifest)}});
}

void write_figure(int n, const Dataset& data, Format format, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory " + dir.string());
  const std::string stem = "fig" + std::to_string(n);
  if (format == Format::json) {
    write_all({{dir / (stem + ".json"), format_json(data)}});
    return;
  }
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  for (const auto& s : data.series) files.emplace_back(dir / (stem + "_" + s.name + ".csv"), format_csv(s.rows));
  files.emplace_back(dir / (stem + "_manifest.json"), format_manifest(data.manifest));
  write_all(files);
}

}  // namespace udw::sweep
