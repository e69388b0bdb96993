#include "pmelab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pmelab/analytic.hpp"
#include "pmelab/field_io.hpp"

namespace pmelab {

using nlohmann::json;

namespace {

const std::set<std::string>& scalar_keys() {
  static const std::set<std::string> keys{
      "m",          "n",           "eta_sequence",       "domain.half_width", "grid.points",     "time.t0",
      "time.t1",    "time.snapshots", "time.spacing",    "initial.kind",      "initial.file",    "checks",
      "holder.h",   "holder.tau",  "holder.K",           "holder.levels",     "beta",            "metric.beta",
      "threshold.positivity", "seed", "output.dir",      "label.m",           "mass",            "heat.m_values",
      "heat.k_values", "inequalities.cases", "trajectory.source"};
  return keys;
}

const std::map<std::string, std::set<std::string>>& initial_kinds() {
  static const std::map<std::string, std::set<std::string>> kinds{
      {"barenblatt", {"C", "mass", "offset"}},
      {"gaussian", {"amplitude", "sigma"}},
      {"bump", {"amplitude", "radius"}},
      {"file", {}}};
  return kinds;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number, got " + v.dump());
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

long long integer(const json& v, const std::string& key) {
  const double x = number(v, key);
  if (x != std::floor(x)) fail(key, "expected an integer, got " + v.dump());
  return static_cast<long long>(x);
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string, got " + v.dump());
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& key) {
  if (v.is_number()) return {number(v, key)};
  if (!v.is_array()) fail(key, "expected a list of numbers, got " + v.dump());
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> strings(const json& v, const std::string& key) {
  if (v.is_string()) {
    std::vector<std::string> out;
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trimmed(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }
  if (!v.is_array()) fail(key, "expected a list of names, got " + v.dump());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(text(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

void flatten_into(const json& node, const std::string& prefix, json& out) {
  for (const auto& [key, value] : node.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten_into(value, full, out);
    } else {
      out[full] = value;
    }
  }
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

double h_for(const RunConfig& c) { return holder_exponent_rule(c.check_m(), c.holder_h).h; }

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "simulate") return Command::Simulate;
  if (name == "verify") return Command::Verify;
  if (name == "barenblatt") return Command::Barenblatt;
  if (name == "compare-heat") return Command::CompareHeat;
  if (name == "inequalities") return Command::Inequalities;
  throw ConfigError("command: unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Verify: return "verify";
    case Command::Barenblatt: return "barenblatt";
    case Command::CompareHeat: return "compare-heat";
    case Command::Inequalities: return "inequalities";
  }
  return "unknown";
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "mass",           "ab_time",         "ab_pressure",   "gradient_bound",       "holder",
      "decay",          "propagation",     "persistence",   "tangency",             "transformed_pde",
      "metric_bound",   "metric_pinch",    "continuation",  "l2_heat",              "neg_ab_time_mislabel",
      "neg_gradient_frozen", "neg_holder_supercritical"};
  return names;
}

RunConfig parse_config(const json& input) {
  if (!input.is_object()) throw ConfigError("config: expected a JSON object of key/value pairs");
  json flat = json::object();
  flatten_into(input, "", flat);

  RunConfig c;
  std::optional<long long> snapshot_count;
  std::optional<std::vector<double>> snapshot_list;
  std::string spacing = "linear";
  bool have_t0 = false;
  bool have_t1 = false;

  for (const auto& [key, value] : flat.items()) {
    if (key.rfind("initial.params.", 0) == 0) {
      c.initial_params[key.substr(15)] = number(value, key);
      continue;
    }
    if (!scalar_keys().count(key)) fail(key, "unknown config key");
    if (key == "m") c.m = number(value, key);
    else if (key == "n") c.n = static_cast<int>(integer(value, key));
    else if (key == "eta_sequence") c.eta_sequence = numbers(value, key);
    else if (key == "domain.half_width") c.half_width = number(value, key);
    else if (key == "grid.points") c.points = static_cast<int>(integer(value, key));
    else if (key == "time.t0") { c.t0 = number(value, key); have_t0 = true; }
    else if (key == "time.t1") { c.t1 = number(value, key); have_t1 = true; }
    else if (key == "time.snapshots") {
      if (value.is_array()) snapshot_list = numbers(value, key);
      else snapshot_count = integer(value, key);
    }
    else if (key == "time.spacing") spacing = text(value, key);
    else if (key == "initial.kind") c.initial_kind = text(value, key);
    else if (key == "initial.file") c.initial_file = text(value, key);
    else if (key == "checks") c.checks = strings(value, key);
    else if (key == "holder.h") c.holder_h = number(value, key);
    else if (key == "holder.tau") c.holder_tau = number(value, key);
    else if (key == "holder.K") c.holder_K = number(value, key);
    else if (key == "holder.levels") c.holder_levels = static_cast<int>(integer(value, key));
    else if (key == "beta") c.beta = number(value, key);
    else if (key == "metric.beta") c.metric_beta = number(value, key);
    else if (key == "threshold.positivity") c.positivity_threshold = number(value, key);
    else if (key == "seed") {
      const long long s = integer(value, key);
      if (s < 0) fail(key, "must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    }
    else if (key == "output.dir") c.output_dir = text(value, key);
    else if (key == "label.m") c.label_m = number(value, key);
    else if (key == "mass") c.mass = number(value, key);
    else if (key == "trajectory.source") c.source = text(value, key);
    else if (key == "heat.m_values") c.heat_m_values = numbers(value, key);
    else if (key == "heat.k_values") c.heat_k_values = numbers(value, key);
    else if (key == "inequalities.cases") {
      const long long s = integer(value, key);
      if (s < 1) fail(key, "must be at least 1");
      c.inequality_cases = static_cast<std::uint64_t>(s);
    }
  }

  if (spacing != "linear" && spacing != "log") fail("time.spacing", "must be \"linear\" or \"log\", got \"" + spacing + "\"");
  if (snapshot_list) {
    if (snapshot_list->empty()) fail("time.snapshots", "list must not be empty");
    if (!have_t0) c.t0 = snapshot_list->front();
    if (!have_t1) c.t1 = snapshot_list->back();
    c.snapshots = *snapshot_list;
  } else {
    const long long count = snapshot_count.value_or(11);
    if (count < 1) fail("time.snapshots", "count must be at least 1");
    if (spacing == "log" && !(c.t0 > 0.0)) fail("time.spacing", "log spacing needs time.t0 > 0");
    for (long long i = 0; i < count; ++i) {
      const double s = count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      c.snapshots.push_back(spacing == "log" ? c.t0 * std::pow(c.t1 / c.t0, s) : c.t0 + s * (c.t1 - c.t0));
    }
    c.snapshots.back() = c.t1;
    if (count > 1) c.snapshots.front() = c.t0;
  }
  return c;
}

void validate_config(const RunConfig& c, Command command) {
  const bool analytic_only = command == Command::Barenblatt;
  if (analytic_only ? (c.n < 1 || c.n > 3) : (c.n != 1 && c.n != 2)) {
    fail("n", analytic_only ? "must be 1, 2 or 3" : "must be 1 or 2 for solver runs");
  }
  if (c.points < 3) fail("grid.points", "must be at least 3, got " + std::to_string(c.points));
  if (c.points % 2 == 0) fail("grid.points", "must be odd so that x = 0 is a grid point, got " + std::to_string(c.points));
  if (!(c.half_width > 0.0)) fail("domain.half_width", "must be positive");
  if (!(c.m >= 1.0)) fail("m", "must be at least 1");
  if (c.label_m && !(*c.label_m >= 1.0)) fail("label.m", "must be at least 1");
  if (c.output_dir.empty()) fail("output.dir", "must not be empty");
  if (c.positivity_threshold && !(*c.positivity_threshold > 0.0)) fail("threshold.positivity", "must be positive");
  for (std::size_t i = 0; i < c.eta_sequence.size(); ++i) {
    if (!(c.eta_sequence[i] > 0.0)) fail("eta_sequence", "entries must be positive");
    if (i > 0 && !(c.eta_sequence[i] < c.eta_sequence[i - 1])) fail("eta_sequence", "must be strictly decreasing");
  }
  if (c.check_m() > 1.0) {
    try {
      holder_exponent_rule(c.check_m(), c.holder_h);
    } catch (const std::exception& e) {
      fail("holder.h", e.what());
    }
  } else if (c.holder_h) {
    fail("holder.h", "only meaningful for m > 1");
  }

  if (command == Command::Barenblatt) {
    if (!(c.m > 1.0)) fail("m", "the source-type solution needs m > 1");
    if (c.mass && !(*c.mass > 0.0)) fail("mass", "must be positive");
    for (double t : c.snapshots) {
      if (!(t > 0.0)) fail("time.snapshots", "evaluation times must be positive");
    }
    return;
  }
  if (command == Command::Inequalities) return;
  if (command == Command::CompareHeat) {
    if (c.initial_kind == "barenblatt") {
      fail("initial.kind", "heat comparison needs data the heat flow accepts (gaussian, bump or file), got barenblatt");
    }
    if (c.heat_m_values.empty()) fail("heat.m_values", "must not be empty");
    if (c.heat_k_values.empty()) fail("heat.k_values", "must not be empty");
    for (double m : c.heat_m_values) {
      if (!(m >= 1.0)) fail("heat.m_values", "entries must be at least 1");
    }
    for (double k : c.heat_k_values) {
      if (!(k > 0.0)) fail("heat.k_values", "entries must be positive");
    }
  }

  if (!(c.t0 >= 0.0)) fail("time.t0", "must be nonnegative");
  if (!(c.t1 > c.t0)) fail("time.t1", "must exceed time.t0");
  if (!strictly_increasing(c.snapshots)) fail("time.snapshots", "must be strictly increasing");
  if (c.snapshots.front() < c.t0 || c.snapshots.back() > c.t1) fail("time.snapshots", "must lie in [time.t0, time.t1]");

  const auto kind = initial_kinds().find(c.initial_kind);
  if (kind == initial_kinds().end()) {
    fail("initial.kind", "unknown kind \"" + c.initial_kind + "\" (expected barenblatt, gaussian, bump or file)");
  }
  for (const auto& [name, value] : c.initial_params) {
    if (!kind->second.count(name)) {
      fail("initial.params." + name, "not a parameter of initial kind \"" + c.initial_kind + "\"");
    }
    if (name != "offset" && !(value > 0.0)) fail("initial.params." + name, "must be positive");
    if (name == "offset" && !(value >= 0.0)) fail("initial.params." + name, "must be nonnegative");
  }
  if (c.initial_kind == "barenblatt" && !(c.m > 1.0)) fail("initial.kind", "barenblatt data needs m > 1");
  if (c.initial_kind == "barenblatt" && c.initial_params.count("C") && c.initial_params.count("mass")) {
    fail("initial.params.mass", "give either C or mass, not both");
  }
  if (c.source != "solver" && c.source != "analytic") {
    fail("trajectory.source", "must be \"solver\" or \"analytic\", got \"" + c.source + "\"");
  }
  if (c.source == "analytic" && c.initial_kind != "barenblatt") {
    fail("trajectory.source", "analytic trajectories need initial.kind \"barenblatt\"");
  }
  if (c.initial_kind == "file" && c.initial_file.empty()) fail("initial.file", "required when initial.kind is \"file\"");
  if (c.initial_kind != "file" && !c.initial_file.empty()) fail("initial.file", "only used when initial.kind is \"file\"");

  if (command != Command::Verify) return;
  if (c.checks.empty()) fail("checks", "verify needs at least one check");
  const auto& names = known_checks();
  const double lm = c.check_m();
  const std::size_t snaps = c.snapshots.size();
  for (const auto& check : c.checks) {
    if (std::find(names.begin(), names.end(), check) == names.end()) fail("checks", "unknown check \"" + check + "\"");
    const std::string key = "checks." + check;
    const bool needs_pme = check != "mass" && check != "decay" && check != "persistence" && check != "l2_heat" &&
                           check != "neg_ab_time_mislabel" && check != "neg_holder_supercritical";
    if (needs_pme && !(lm > 1.0)) fail(key, "needs m > 1 (or label.m > 1)");
    if ((check == "ab_time" || check == "decay" || check == "persistence") && snaps < 2) {
      fail(key, "needs at least 2 snapshots");
    }
    if (check == "transformed_pde" && snaps < 3) fail(key, "needs at least 3 snapshots");
    if (check == "metric_pinch" && snaps < 4) fail(key, "needs at least 4 snapshots");
    if ((check == "holder" || check == "tangency") && c.holder_levels < 2) fail("holder.levels", "must be at least 2");
    if (check == "continuation" && c.eta_sequence.size() < 3) fail("eta_sequence", "continuation needs at least 3 values");
    if (check == "propagation" && c.initial_kind == "file") fail(key, "needs analytic or compactly supported initial data");
    if (check == "tangency" || check == "transformed_pde") {
      const double h = h_for(c);
      const double beta = c.beta.value_or(2.0 * h + 0.5);
      if (check == "tangency" && !(beta > h)) fail("beta", "tangency needs beta > h");
      if (check == "transformed_pde" && !(beta > 2.0 * h)) fail("beta", "transformed_pde needs beta > 2h");
    }
    if (check == "metric_bound" || check == "metric_pinch") {
      const double h = h_for(c);
      const double beta = c.metric_beta.value_or(c.beta.value_or(h + 0.5));
      if (!(beta > h)) fail("metric.beta", "metric checks need beta > h");
    }
    if (check == "l2_heat") {
      if (c.initial_kind == "barenblatt") {
        fail("initial.kind", "heat comparison needs data the heat flow accepts (gaussian, bump or file), got barenblatt");
      }
      for (double m : c.heat_m_values) {
        if (!(m >= 1.0)) fail("heat.m_values", "entries must be at least 1");
      }
      for (double k : c.heat_k_values) {
        if (!(k > 0.0)) fail("heat.k_values", "entries must be positive");
      }
    }
  }
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + " is not valid JSON (" + e.what() + ")");
  }
  if (!parsed.is_object()) throw ConfigError("config: " + path + " must hold a JSON object");
  json flat = json::object();
  flatten_into(parsed, "", flat);
  return flat;
}

std::vector<double> parse_number_list(const std::string& text_in, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text_in);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(key, "\"" + item + "\" is not a number");
    }
    if (used != item.size()) fail(key, "\"" + item + "\" is not a number");
    out.push_back(v);
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

PMEProblem make_problem(const RunConfig& c) {
  PMEProblem p;
  p.m = c.m;
  p.eta = c.eta_sequence.empty() ? 0.0 : c.eta_sequence.back();
  p.t0 = c.t0;
  p.t1 = c.t1;
  p.snapshot_times = c.snapshots;
  auto param = [&](const char* name, double fallback) {
    const auto it = c.initial_params.find(name);
    return it == c.initial_params.end() ? fallback : it->second;
  };
  if (c.initial_kind == "barenblatt") {
    BarenblattInitial b;
    b.offset = param("offset", b.offset);
    if (c.mass) b.C = barenblatt_constant_for_mass(c.m, c.n, *c.mass);
    else if (c.initial_params.count("mass")) b.C = barenblatt_constant_for_mass(c.m, c.n, c.initial_params.at("mass"));
    else b.C = param("C", b.C);
    p.initial = b;
  } else if (c.initial_kind == "gaussian") {
    p.initial = GaussianInitial{param("amplitude", 1.0), param("sigma", 1.0)};
  } else if (c.initial_kind == "bump") {
    p.initial = BumpInitial{param("amplitude", 1.0), param("radius", 1.0)};
  } else if (c.initial_kind == "file") {
    p.initial = FileInitial{read_field_file(c.initial_file)};
  } else {
    fail("initial.kind", "unknown kind \"" + c.initial_kind + "\"");
  }
  return p;
}

Grid make_grid(const RunConfig& c, int refinement) {
  Grid g(c.n, c.half_width, c.points);
  for (int i = 0; i < refinement; ++i) g = g.refined();
  return g;
}

}  // namespace pmelab
