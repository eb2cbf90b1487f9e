#include "pvac/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pvac/errors.hpp"
#include "pvac/gas.hpp"

namespace pvac {

using nlohmann::json;

std::string to_string(TimeScheme scheme) {
  return scheme == TimeScheme::CrankNicolson ? "crank_nicolson" : "implicit_euler";
}

std::string to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::Polynomial: return "polynomial";
    case ProfileFamily::Sine: return "sine";
    case ProfileFamily::Custom: return "custom";
  }
  return "polynomial";
}

int locate_line(const std::string& text, const std::string& pointer) {
  struct Frame {
    bool object;
    std::string key;
    int index = 0;
    bool expecting_key = true;
  };
  std::vector<Frame> stack;
  int line = 1;
  auto current = [&] {
    std::string p;
    for (const auto& f : stack) {
      p += "/" + (f.object ? f.key : std::to_string(f.index));
    }
    return p;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ':') {
      continue;
    }
    if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object) {
          stack.back().expecting_key = true;
        } else {
          ++stack.back().index;
        }
      }
      continue;
    }
    if (c == '}' || c == ']') {
      if (!stack.empty()) {
        stack.pop_back();
      }
      continue;
    }
    if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) {
          ++i;
        }
        s += text[i];
      }
      if (!stack.empty() && stack.back().object && stack.back().expecting_key) {
        stack.back().key = s;
        stack.back().expecting_key = false;
        continue;
      }
      if (current() == pointer) {
        return line;
      }
      continue;
    }
    // Start of a value: object, array or literal.
    if (current() == pointer) {
      return line;
    }
    if (c == '{' || c == '[') {
      stack.push_back(Frame{c == '{', {}, 0, true});
      continue;
    }
    while (i + 1 < text.size() && std::string(",]}\n \t\r").find(text[i + 1]) == std::string::npos) {
      ++i;
    }
  }
  return pointer.empty() ? 1 : 0;
}

namespace {

class Reader {
 public:
  Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void error(const std::string& pointer, const std::string& msg) const {
    std::string where = pointer;
    int line = 0;
    // Fall back to the nearest enclosing field that exists in the text.
    for (std::string p = pointer;; p = p.substr(0, p.rfind('/'))) {
      line = locate_line(text_, p);
      if (line > 0 || p.empty()) {
        break;
      }
    }
    std::ostringstream out;
    out << source_ << ":" << line << ": field '" << (where.empty() ? "/" : where) << "': " << msg;
    fail(ErrorCode::ConfigInvalid, out.str());
  }

  void expect_object(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) {
      error(ptr, "expected an object");
    }
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
      if (!keys.count(key)) {
        error(ptr + "/" + key, "unknown key");
      }
    }
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) {
      error(ptr, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      error(ptr, "must be finite");
    }
    return v;
  }

  long integer(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) {
      error(ptr, "expected an integer");
    }
    return j.get<long>();
  }

  std::string string(const json& j, const std::string& ptr) const {
    if (!j.is_string()) {
      error(ptr, "expected a string");
    }
    return j.get<std::string>();
  }

  std::vector<double> numbers(const json& j, const std::string& ptr) const {
    if (!j.is_array()) {
      error(ptr, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(number(j[i], ptr + "/" + std::to_string(i)));
    }
    return out;
  }

  AnalyticFunction function(const json& j, const std::string& ptr) const {
    expect_object(j, ptr, {"polynomial", "sine", "max_order"});
    std::vector<double> poly;
    std::vector<SineMode> sines;
    int max_order = AnalyticFunction::kUnlimited;
    if (j.contains("polynomial")) {
      poly = numbers(j["polynomial"], ptr + "/polynomial");
    }
    if (j.contains("sine")) {
      const auto& arr = j["sine"];
      if (!arr.is_array()) {
        error(ptr + "/sine", "expected an array of sine modes");
      }
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = ptr + "/sine/" + std::to_string(i);
        expect_object(arr[i], p, {"amplitude", "frequency", "phase"});
        SineMode m;
        if (arr[i].contains("amplitude")) m.amplitude = number(arr[i]["amplitude"], p + "/amplitude");
        if (arr[i].contains("frequency")) m.frequency = number(arr[i]["frequency"], p + "/frequency");
        if (arr[i].contains("phase")) m.phase = number(arr[i]["phase"], p + "/phase");
        sines.push_back(m);
      }
    }
    if (j.contains("max_order")) {
      const long m = integer(j["max_order"], ptr + "/max_order");
      if (m < 0 || m > AnalyticFunction::kUnlimited) {
        error(ptr + "/max_order", "must lie in [0, 64]");
      }
      max_order = static_cast<int>(m);
    }
    return AnalyticFunction(std::move(poly), std::move(sines), max_order);
  }

 private:
  const std::string& text_;
  std::string source_;
};

json function_json(const AnalyticFunction& f) {
  json sines = json::array();
  for (const auto& m : f.sines()) {
    sines.push_back({{"amplitude", m.amplitude}, {"frequency", m.frequency}, {"phase", m.phase}});
  }
  return {{"polynomial", f.poly()}, {"sine", sines}, {"max_order", f.max_order()}};
}

const std::set<std::string> kDiagnostics{"mass", "momentum", "entropy", "vacuum_slope", "energy"};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    fail(ErrorCode::ConfigInvalid, source_name + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  const Reader rd(text, source_name);
  rd.expect_object(doc, "", {"schema_version", "gas", "profile", "u0", "s0", "numerics", "epsilon",
                             "sweep", "horizon", "outputs", "seed", "verify"});
  RunConfig cfg;
  if (!doc.contains("schema_version")) {
    rd.error("/schema_version", "missing (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (rd.integer(doc["schema_version"], "/schema_version") != kSchemaVersion) {
    rd.error("/schema_version", "unsupported schema version, expected " + std::to_string(kSchemaVersion));
  }

  if (doc.contains("gas")) {
    rd.expect_object(doc["gas"], "/gas", {"gamma"});
    if (doc["gas"].contains("gamma")) cfg.gamma = rd.number(doc["gas"]["gamma"], "/gas/gamma");
  }
  if (!(cfg.gamma > 1.0 && cfg.gamma < 3.0)) {
    rd.error("/gas/gamma", "gamma = " + std::to_string(cfg.gamma) + " outside the admissible range (1, 3)");
  }

  if (doc.contains("profile")) {
    const auto& p = doc["profile"];
    rd.expect_object(p, "/profile", {"family", "amplitude", "coefficients", "kappa"});
    if (p.contains("family")) {
      const auto fam = rd.string(p["family"], "/profile/family");
      if (fam == "polynomial") cfg.family = ProfileFamily::Polynomial;
      else if (fam == "sine") cfg.family = ProfileFamily::Sine;
      else if (fam == "custom") cfg.family = ProfileFamily::Custom;
      else rd.error("/profile/family", "expected polynomial, sine or custom");
    }
    if (p.contains("amplitude")) cfg.amplitude = rd.number(p["amplitude"], "/profile/amplitude");
    if (p.contains("coefficients")) cfg.coefficients = rd.numbers(p["coefficients"], "/profile/coefficients");
    if (p.contains("kappa")) cfg.kappa = rd.number(p["kappa"], "/profile/kappa");
  }
  if (doc.contains("u0")) cfg.u0 = rd.function(doc["u0"], "/u0");
  if (doc.contains("s0")) cfg.s0 = rd.function(doc["s0"], "/s0");

  if (doc.contains("numerics")) {
    const auto& n = doc["numerics"];
    rd.expect_object(n, "/numerics", {"n_cells", "dt", "cfl", "scheme", "newton_tol", "newton_max"});
    if (n.contains("n_cells")) {
      const long v = rd.integer(n["n_cells"], "/numerics/n_cells");
      if (v < Grid1D::kMinCells || v > (1L << 20)) rd.error("/numerics/n_cells", "must lie in [32, 2^20]");
      cfg.n_cells = static_cast<int>(v);
    }
    if (n.contains("dt") && n.contains("cfl")) rd.error("/numerics/cfl", "give either dt or cfl, not both");
    if (n.contains("dt")) {
      cfg.dt = rd.number(n["dt"], "/numerics/dt");
      if (!(*cfg.dt > 0.0)) rd.error("/numerics/dt", "must be positive");
    }
    if (n.contains("cfl")) {
      cfg.cfl = rd.number(n["cfl"], "/numerics/cfl");
      if (!(*cfg.cfl > 0.0)) rd.error("/numerics/cfl", "must be positive");
    }
    if (n.contains("scheme")) {
      const auto s = rd.string(n["scheme"], "/numerics/scheme");
      if (s == "implicit_euler") cfg.scheme = TimeScheme::ImplicitEuler;
      else if (s == "crank_nicolson") cfg.scheme = TimeScheme::CrankNicolson;
      else rd.error("/numerics/scheme", "expected implicit_euler or crank_nicolson");
    }
    if (n.contains("newton_tol")) {
      cfg.newton_tol = rd.number(n["newton_tol"], "/numerics/newton_tol");
      if (!(cfg.newton_tol > 0.0)) rd.error("/numerics/newton_tol", "must be positive");
    }
    if (n.contains("newton_max")) {
      const long v = rd.integer(n["newton_max"], "/numerics/newton_max");
      if (v < 1 || v > 1000) rd.error("/numerics/newton_max", "must lie in [1, 1000]");
      cfg.newton_max = static_cast<int>(v);
    }
  }
  if (!cfg.dt && !cfg.cfl) {
    cfg.dt = 1e-3;
  }

  if (doc.contains("epsilon")) {
    cfg.epsilon = rd.number(doc["epsilon"], "/epsilon");
    if (cfg.epsilon < 0.0) rd.error("/epsilon", "must be non-negative");
  }
  if (doc.contains("horizon")) {
    cfg.horizon = rd.number(doc["horizon"], "/horizon");
    if (!(cfg.horizon > 0.0)) rd.error("/horizon", "must be positive");
  }

  if (doc.contains("sweep")) {
    const auto& s = doc["sweep"];
    rd.expect_object(s, "/sweep", {"epsilons", "grids", "compare_norm", "dt_rule"});
    SweepSection sec;
    sec.epsilons = s.contains("epsilons") ? rd.numbers(s["epsilons"], "/sweep/epsilons") : default_ladder();
    try {
      validate_ladder(sec.epsilons);
    } catch (const Error& e) {
      rd.error("/sweep/epsilons", e.what());
    }
    if (s.contains("grids")) {
      const auto& g = s["grids"];
      if (!g.is_array()) rd.error("/sweep/grids", "expected an array of cell counts");
      for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string p = "/sweep/grids/" + std::to_string(i);
        const long v = rd.integer(g[i], p);
        if (v < Grid1D::kMinCells) rd.error(p, "grids need at least 32 cells");
        sec.grids.push_back(static_cast<int>(v));
      }
    }
    if (s.contains("compare_norm")) {
      const auto v = rd.string(s["compare_norm"], "/sweep/compare_norm");
      if (v == "plain_l2") sec.compare_norm = CompareNorm::PlainL2;
      else if (v == "weighted") sec.compare_norm = CompareNorm::Weighted;
      else rd.error("/sweep/compare_norm", "expected plain_l2 or weighted");
    }
    if (s.contains("dt_rule")) {
      const auto v = rd.string(s["dt_rule"], "/sweep/dt_rule");
      if (v == "fixed") sec.dt_rule = DtRule::Fixed;
      else if (v == "cfl") sec.dt_rule = DtRule::Cfl;
      else rd.error("/sweep/dt_rule", "expected fixed or cfl");
    }
    cfg.sweep = sec;
  }

  if (doc.contains("outputs")) {
    const auto& o = doc["outputs"];
    rd.expect_object(o, "/outputs", {"directory", "cadence", "diagnostics"});
    if (o.contains("directory")) cfg.outputs.directory = rd.string(o["directory"], "/outputs/directory");
    if (o.contains("cadence")) {
      const long v = rd.integer(o["cadence"], "/outputs/cadence");
      if (v < 1) rd.error("/outputs/cadence", "must be at least 1");
      cfg.outputs.cadence = static_cast<int>(v);
    }
    if (o.contains("diagnostics")) {
      const auto& d = o["diagnostics"];
      if (!d.is_array()) rd.error("/outputs/diagnostics", "expected an array of names");
      cfg.outputs.diagnostics.clear();
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::string p = "/outputs/diagnostics/" + std::to_string(i);
        const auto name = rd.string(d[i], p);
        if (!kDiagnostics.count(name)) rd.error(p, "unknown diagnostic '" + name + "'");
        cfg.outputs.diagnostics.push_back(name);
      }
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) rd.error("/seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }

  if (doc.contains("verify")) {
    const auto& v = doc["verify"];
    rd.expect_object(v, "/verify",
                     {"compat_order", "compat_error", "momentum", "mass", "entropy_ratio", "vacuum_low",
                      "vacuum_high", "energy_ratio", "cauchy_rate", "stability_linearity",
                      "stability_rate", "hardy_bound", "hardy_change", "relaxation_constant", "mms_order"});
    auto& t = cfg.verify;
    const std::pair<const char*, double*> fields[] = {
        {"compat_order", &t.compat_order}, {"compat_error", &t.compat_error},
        {"momentum", &t.momentum}, {"mass", &t.mass}, {"entropy_ratio", &t.entropy_ratio},
        {"vacuum_low", &t.vacuum_low}, {"vacuum_high", &t.vacuum_high},
        {"energy_ratio", &t.energy_ratio}, {"cauchy_rate", &t.cauchy_rate},
        {"stability_linearity", &t.stability_linearity}, {"stability_rate", &t.stability_rate},
        {"hardy_bound", &t.hardy_bound}, {"hardy_change", &t.hardy_change},
        {"relaxation_constant", &t.relaxation_constant}, {"mms_order", &t.mms_order}};
    for (const auto& [key, slot] : fields) {
      if (v.contains(key)) {
        *slot = rd.number(v[key], std::string("/verify/") + key);
      }
    }
  }

  // Core-model preconditions, checked before any run starts.
  try {
    (void)make_initial_data(cfg);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OutOfRangeGamma || e.code() == ErrorCode::UnsupportedOrder) {
      rd.error("/gas/gamma", e.what());
    }
    if (e.code() == ErrorCode::InsufficientSmoothness) {
      rd.error("/u0", e.what());
    }
    rd.error("/profile", e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::ConfigInvalid, path + ": cannot open config file");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

json to_json(const RunConfig& c) {
  json numerics = {{"n_cells", c.n_cells}, {"scheme", to_string(c.scheme)},
                   {"newton_tol", c.newton_tol}, {"newton_max", c.newton_max}};
  if (c.cfl) {
    numerics["cfl"] = *c.cfl;
  } else {
    numerics["dt"] = c.dt.value_or(1e-3);
  }
  json doc = {
      {"schema_version", c.schema_version},
      {"gas", {{"gamma", c.gamma}}},
      {"profile", {{"family", to_string(c.family)}, {"amplitude", c.amplitude},
                   {"coefficients", c.coefficients}, {"kappa", c.kappa}}},
      {"u0", function_json(c.u0)},
      {"s0", function_json(c.s0)},
      {"numerics", numerics},
      {"epsilon", c.epsilon},
      {"horizon", c.horizon},
      {"outputs", {{"directory", c.outputs.directory}, {"cadence", c.outputs.cadence},
                   {"diagnostics", c.outputs.diagnostics}}},
      {"seed", c.seed},
  };
  if (c.sweep) {
    doc["sweep"] = {{"epsilons", c.sweep->epsilons},
                    {"grids", c.sweep->grids},
                    {"compare_norm", c.sweep->compare_norm == CompareNorm::Weighted ? "weighted" : "plain_l2"},
                    {"dt_rule", c.sweep->dt_rule == DtRule::Cfl ? "cfl" : "fixed"}};
  }
  const auto& t = c.verify;
  doc["verify"] = {{"compat_order", t.compat_order}, {"compat_error", t.compat_error},
                   {"momentum", t.momentum}, {"mass", t.mass}, {"entropy_ratio", t.entropy_ratio},
                   {"vacuum_low", t.vacuum_low}, {"vacuum_high", t.vacuum_high},
                   {"energy_ratio", t.energy_ratio}, {"cauchy_rate", t.cauchy_rate},
                   {"stability_linearity", t.stability_linearity},
                   {"stability_rate", t.stability_rate}, {"hardy_bound", t.hardy_bound},
                   {"hardy_change", t.hardy_change}, {"relaxation_constant", t.relaxation_constant},
                   {"mms_order", t.mms_order}};
  return doc;
}

InitialData make_initial_data(const RunConfig& config) {
  const auto gas = derive_exponents(config.gamma);
  ProfileSpec spec;
  spec.family = config.family;
  spec.amplitude = config.amplitude;
  spec.coefficients = config.coefficients;
  spec.kappa = config.kappa;
  spec.u0 = config.u0;
  spec.s0 = config.s0;
  return make_vacuum_profile(spec, gas);
}

RunOptions make_run_options(const RunConfig& config, const InitialData& data, const Grid1D& grid) {
  RunOptions opt;
  opt.horizon = config.horizon;
  opt.output_every = config.outputs.cadence;
  opt.config.epsilon = config.epsilon;
  opt.config.scheme = config.scheme;
  opt.config.newton_tol = config.newton_tol;
  opt.config.newton_max = config.newton_max;
  opt.config.dt = config.cfl ? advisory_dt(initial_state(grid, data), data, *config.cfl)
                             : config.dt.value_or(1e-3);
  return opt;
}

}  // namespace pvac
