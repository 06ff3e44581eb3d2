#include "udw/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace udw::config {
namespace {

using nlohmann::json;

const std::set<std::string> kTopKeys = {
    "units",  "dim",         "separation",  "time_gap", "duration", "smearing", "gap_a",
    "gap_b",  "coupling_a",  "coupling_b",  "cutoff",   "state_a",  "state_b",  "t_a"};

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw InvalidInput(key + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(key + " must be finite");
  return v;
}

DetectorState read_state(const json& j, const std::string& key) {
  if (!j.is_object()) throw InvalidInput(key + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k != "alpha" && k != "beta") throw InvalidInput("unknown key " + key + "." + k);
  }
  if (!j.contains("alpha")) throw InvalidInput(key + ".alpha is required");
  const double alpha = number(j.at("alpha"), key + ".alpha");
  complex beta = 0.0;
  if (j.contains("beta")) {
    const auto& b = j.at("beta");
    if (b.is_number()) {
      beta = number(b, key + ".beta");
    } else if (b.is_array() && b.size() == 2) {
      beta = {number(b[0], key + ".beta[0]"), number(b[1], key + ".beta[1]")};
    } else {
      throw InvalidInput(key + ".beta must be a number or [re, im]");
    }
  }
  return DetectorState::make(alpha, beta);
}

json write_state(const DetectorState& s) {
  return json{{"alpha", s.alpha()}, {"beta", json::array({s.beta().real(), s.beta().imag()})}};
}

}  // namespace

RunConfig from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kTopKeys.count(k)) throw InvalidInput("unknown config key: " + k);
  }
  if (j.contains("units")) {
    if (!j.at("units").is_string() || j.at("units").get<std::string>() != "natural") {
      throw InvalidInput("units must be \"natural\"");
    }
  }
  RunConfig c;
  ScenarioSpec& s = c.scenario;
  if (j.contains("dim")) {
    const auto& d = j.at("dim");
    if (!d.is_number_integer()) throw InvalidInput("dim must be 1, 2 or 3");
    s.dim = make_dimension(d.get<int>());
  }
  auto read = [&j](const char* key, double& field) {
    if (j.contains(key)) field = number(j.at(key), key);
  };
  read("separation", s.separation);
  read("time_gap", s.time_gap);
  read("duration", s.duration);
  read("smearing", s.smearing);
  read("gap_a", s.gap_a);
  read("gap_b", s.gap_b);
  read("coupling_a", s.coupling_a);
  read("coupling_b", s.coupling_b);
  read("t_a", c.t_a);
  if (j.contains("cutoff") && !j.at("cutoff").is_null()) s.cutoff = number(j.at("cutoff"), "cutoff");
  if (j.contains("state_a")) c.state_a = read_state(j.at("state_a"), "state_a");
  if (j.contains("state_b")) c.state_b = read_state(j.at("state_b"), "state_b");
  validate(s);
  return c;
}

json to_json(const RunConfig& c) {
  const ScenarioSpec& s = c.scenario;
  json j{{"units", "natural"},
         {"dim", spatial_dims(s.dim)},
         {"separation", s.separation},
         {"time_gap", s.time_gap},
         {"duration", s.duration},
         {"smearing", s.smearing},
         {"gap_a", s.gap_a},
         {"gap_b", s.gap_b},
         {"coupling_a", s.coupling_a},
         {"coupling_b", s.coupling_b},
         {"state_a", write_state(c.state_a)},
         {"state_b", write_state(c.state_b)},
         {"t_a", c.t_a}};
  j["cutoff"] = s.cutoff ? json(*s.cutoff) : json(nullptr);
  return j;
}

RunConfig parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

RunConfig load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace udw::config
