#include "tascap/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tascap/errors.hpp"

namespace tascap {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw config_error("field '" + key + "': not a number: '" + value + "'");
  }
  if (pos != value.size()) {
    throw config_error("field '" + key + "': trailing junk in '" + value + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct RatioSpec {
  const char* key;
  const char* numer;
  const char* denom;
};

constexpr RatioSpec kRatios[] = {
    {"inr", "p_p", "noise"},  {"sir_q", "q", "p_p"},
    {"sir_p", "p_max", "p_p"}, {"snr_q", "q", "noise"},
    {"snr_p", "p_max", "noise"}, {"pqr", "p_max", "q"},
};

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section header
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error("line " + std::to_string(line_no) +
                         ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw config_error("line " + std::to_string(line_no) +
                         ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw config_error("line " + std::to_string(line_no) +
                         ": duplicate key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  const auto take = [&](const char* key) -> std::string {
    const auto it = kv.find(key);
    if (it == kv.end()) return "";
    const std::string v = it->second;
    kv.erase(it);
    return v;
  };

  const std::string unit = lower(take("unit"));
  if (unit.empty()) {
    throw config_error("field 'unit' is required ('db' or 'linear')");
  }
  if (unit != "db" && unit != "linear") {
    throw config_error("field 'unit': expected 'db' or 'linear', got '" + unit +
                       "'");
  }
  cfg.unit_db = (unit == "db");
  const auto to_linear = [&](double v) {
    return cfg.unit_db ? db_to_linear(v) : v;
  };

  cfg.sweep_var = take("sweep");
  if (!cfg.sweep_var.empty()) {
    const std::string s = lower(cfg.sweep_var);
    if (s == "q") cfg.sweep_var = "Q";
    else if (s == "p_max") cfg.sweep_var = "P_max";
    else if (s == "n") cfg.sweep_var = "N";
    else throw config_error("field 'sweep': must be one of Q, P_max, N");
    const std::string from = take("sweep_from"), to = take("sweep_to"),
                      steps = take("sweep_steps");
    if (from.empty() || to.empty() || steps.empty()) {
      throw config_error("sweep requires sweep_from, sweep_to, sweep_steps");
    }
    cfg.sweep_from = parse_number("sweep_from", from);
    cfg.sweep_to = parse_number("sweep_to", to);
    cfg.sweep_steps = static_cast<int>(parse_number("sweep_steps", steps));
    if (cfg.sweep_steps < 2) {
      throw config_error("field 'sweep_steps': must be >= 2");
    }
  }

  // Primitive parameters, tracking which were pinned explicitly.
  std::map<std::string, double*> primitives = {
      {"p_max", &cfg.params.p_max},   {"q", &cfg.params.q_limit},
      {"p_p", &cfg.params.p_p},       {"noise", &cfg.params.noise},
      {"mean_g", &cfg.params.mean_g}, {"mean_h", &cfg.params.mean_h},
      {"mean_q", &cfg.params.mean_q}};
  std::set<std::string> pinned;
  for (auto& [name, slot] : primitives) {
    const std::string v = take(name.c_str());
    if (v.empty()) continue;
    if (name == lower(cfg.sweep_var)) {
      throw config_error("swept variable '" + name +
                         "' must not also be fixed in the config");
    }
    *slot = to_linear(parse_number(name, v));
    pinned.insert(name);
  }

  // Composite-ratio expansion: two passes, the second allowing the defaults
  // for noise and the channel means to anchor otherwise-free ratios.
  std::map<std::string, double> ratios;
  for (const auto& spec : kRatios) {
    const std::string v = take(spec.key);
    if (v.empty()) continue;
    if (lower(cfg.sweep_var) == spec.numer || lower(cfg.sweep_var) == spec.denom) {
      throw config_error(std::string("ratio '") + spec.key +
                         "' involves the swept variable; fix primitives "
                         "directly instead");
    }
    ratios[spec.key] = to_linear(parse_number(spec.key, v));
  }
  for (int phase = 0; phase < 2 && !ratios.empty(); ++phase) {
    if (phase == 1) {
      pinned.insert({"noise", "mean_g", "mean_h", "mean_q"});
    }
    bool progress = true;
    while (progress && !ratios.empty()) {
      progress = false;
      for (const auto& spec : kRatios) {
        const auto it = ratios.find(spec.key);
        if (it == ratios.end()) continue;
        const bool have_n = pinned.count(spec.numer) > 0;
        const bool have_d = pinned.count(spec.denom) > 0;
        if (have_n && have_d) {
          throw config_error(std::string("ratio '") + spec.key +
                             "' conflicts with explicitly set '" + spec.numer +
                             "' and '" + spec.denom + "'");
        }
        if (have_n) {
          *primitives[spec.denom] = *primitives[spec.numer] / it->second;
          pinned.insert(spec.denom);
        } else if (have_d) {
          *primitives[spec.numer] = it->second * *primitives[spec.denom];
          pinned.insert(spec.numer);
        } else {
          continue;
        }
        ratios.erase(it);
        progress = true;
      }
    }
  }
  if (!ratios.empty()) {
    throw config_error("ratio '" + ratios.begin()->first +
                       "' cannot be resolved to primitives; pin one side");
  }

  for (const std::string& item : split_list(take("n_antennas"))) {
    const int n = static_cast<int>(parse_number("n_antennas", item));
    if (n < 1) throw config_error("field 'n_antennas': counts must be >= 1");
    cfg.antenna_counts.push_back(n);
  }
  cfg.methods = split_list(take("methods"));
  for (auto& m : cfg.methods) {
    m = lower(m);
    if (m != "exact" && m != "evt" && m != "iplr" && m != "tplr" &&
        m != "tplr_low" && m != "mc") {
      throw config_error("field 'methods': unknown method '" + m + "'");
    }
  }

  std::string v;
  if (!(v = take("metric")).empty()) {
    cfg.metric = lower(v);
    if (cfg.metric != "mean" && cfg.metric != "outage") {
      throw config_error("field 'metric': expected 'mean' or 'outage'");
    }
  }
  if (!(v = take("epsilon")).empty()) {
    cfg.epsilon = parse_number("epsilon", v);
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0)) {
      throw config_error("field 'epsilon': must lie in (0, 1)");
    }
  }
  if (!(v = take("trials")).empty()) {
    cfg.trials = static_cast<std::uint64_t>(parse_number("trials", v));
  }
  if (!(v = take("seed")).empty()) {
    cfg.seed = static_cast<std::uint64_t>(parse_number("seed", v));
  }
  if (!(v = take("workers")).empty()) {
    cfg.workers = static_cast<int>(parse_number("workers", v));
    if (cfg.workers < 1) throw config_error("field 'workers': must be >= 1");
  }
  cfg.out_path = take("out");
  if (!(v = take("distribution")).empty()) {
    cfg.distribution = lower(v);
    if (cfg.distribution != "sinr" && cfg.distribution != "exponential") {
      throw config_error("field 'distribution': expected 'sinr' or 'exponential'");
    }
  }
  if (!(v = take("grid_max")).empty()) {
    cfg.grid_max = parse_number("grid_max", v);
  }
  if (!(v = take("grid_points")).empty()) {
    cfg.grid_points = static_cast<int>(parse_number("grid_points", v));
    if (cfg.grid_points < 2) throw config_error("field 'grid_points': must be >= 2");
  }

  if (!kv.empty()) {
    throw config_error("unknown field '" + kv.begin()->first + "'");
  }
  cfg.params.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  return parse_config(in);
}

std::vector<double> ExperimentConfig::sweep_grid() const {
  if (sweep_var.empty()) {
    throw config_error("config has no sweep specification");
  }
  std::vector<double> grid;
  if (sweep_var == "N") {
    // Geometric spacing rounded to integer antenna counts.
    if (!(sweep_from >= 1.0) || !(sweep_to >= sweep_from)) {
      throw config_error("N sweep requires 1 <= sweep_from <= sweep_to");
    }
    const double la = std::log(sweep_from), lb = std::log(sweep_to);
    for (int i = 0; i < sweep_steps; ++i) {
      const double t = static_cast<double>(i) / (sweep_steps - 1);
      const double n = std::round(std::exp(la + t * (lb - la)));
      if (grid.empty() || n > grid.back()) grid.push_back(n);
    }
  } else {
    for (int i = 0; i < sweep_steps; ++i) {
      const double t = static_cast<double>(i) / (sweep_steps - 1);
      grid.push_back(sweep_from + t * (sweep_to - sweep_from));
    }
  }
  return grid;
}

SystemParams ExperimentConfig::params_at(double sweep_value) const {
  SystemParams p = params;
  const double lin = unit_db ? db_to_linear(sweep_value) : sweep_value;
  if (sweep_var == "Q") p.q_limit = lin;
  else if (sweep_var == "P_max") p.p_max = lin;
  return p;
}

}  // namespace tascap
