#include "bfam/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "bfam/dynamics.hpp"

namespace bfam {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::set<std::string>& allowed_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = {
        "scenario", "grid.n", "grid.length", "t_end", "s", "rhs.form",
        "params.preset", "params.b", "params.kappa", "params.lambda",
        "step.dt_init", "step.cfl", "step.dt_min",
        "step.blowup_slope_threshold", "step.norm_guard",
        "step.frame_interval", "besov.p", "besov.r", "theory.C",
        "transform.lambda", "transform.tolerance", "friedrichs.n_max",
        "friedrichs.frames", "friedrichs.substeps", "scan.amplitudes",
        "seeds.count", "norms.s1", "norms.s2", "norms.corpus",
        "output.frames", "output.traces"};
    for (const char* fld : {"kind", "amplitude", "width", "center",
                            "wavenumber", "sharpness"}) {
      k.insert(std::string("u0.") + fld);
      k.insert(std::string("sigma0.") + fld);
    }
    for (const char* c : {"alpha", "beta", "gamma", "xi"})
      for (const char* fld : {"kind", "value", "scale", "lambda", "times",
                              "samples"})
        k.insert(std::string("params.") + c + "." + fld);
    return k;
  }();
  return keys;
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail_key(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

double to_double(const std::string& key, const std::string& v) {
  std::string t = trim(v);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  const char* s = t.c_str();
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0') fail_key(key, "not a number: '" + v + "'");
  return x;
}

long to_int(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  const long x = std::strtol(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0')
    fail_key(key, "not an integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "true") return true;
  if (t == "false") return false;
  fail_key(key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (cur.empty()) fail_key(key, "empty list element");
    out.push_back(to_double(key, cur));
  }
  if (out.empty()) fail_key(key, "empty list");
  return out;
}

class Extractor {
 public:
  explicit Extractor(std::map<std::string, Entry> kv) : kv_(std::move(kv)) {}

  const Entry* find(const std::string& key) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? nullptr : &it->second;
  }
  bool has_prefix(const std::string& prefix) const {
    auto it = kv_.lower_bound(prefix);
    return it != kv_.end() && it->first.rfind(prefix, 0) == 0;
  }
  void number(const std::string& key, double& dst) const {
    if (const Entry* e = find(key)) dst = to_double(key, e->value);
  }
  void integer(const std::string& key, int& dst) const {
    if (const Entry* e = find(key)) dst = int(to_int(key, e->value));
  }
  void boolean(const std::string& key, bool& dst) const {
    if (const Entry* e = find(key)) dst = to_bool(key, e->value);
  }
  void text(const std::string& key, std::string& dst) const {
    if (const Entry* e = find(key)) dst = trim(e->value);
  }
  void list(const std::string& key, std::vector<double>& dst) const {
    if (const Entry* e = find(key)) dst = to_list(key, e->value);
  }

 private:
  std::map<std::string, Entry> kv_;
};

void extract_data(const Extractor& ex, const std::string& prefix, DataSpec& d) {
  ex.text(prefix + ".kind", d.kind);
  ex.number(prefix + ".amplitude", d.amplitude);
  ex.number(prefix + ".width", d.width);
  ex.number(prefix + ".center", d.center);
  ex.integer(prefix + ".wavenumber", d.wavenumber);
  ex.number(prefix + ".sharpness", d.sharpness);
  static const std::set<std::string> kinds = {"zero", "gaussian-bump", "sine",
                                              "smooth-peak"};
  if (!kinds.count(d.kind)) fail_key(prefix + ".kind", "unknown preset '" + d.kind + "'");
}

ParamFn extract_coefficient(const Extractor& ex, const std::string& prefix) {
  std::string kind = "constant";
  ex.text(prefix + ".kind", kind);
  if (kind == "constant") {
    double v = 0.0;
    if (!ex.find(prefix + ".value")) fail_key(prefix + ".value", "required");
    ex.number(prefix + ".value", v);
    return ParamFn::constant(v);
  }
  if (kind == "damped-exp") {
    double scale = 0.0, lambda = 0.0;
    if (!ex.find(prefix + ".scale")) fail_key(prefix + ".scale", "required");
    if (!ex.find(prefix + ".lambda")) fail_key(prefix + ".lambda", "required");
    ex.number(prefix + ".scale", scale);
    ex.number(prefix + ".lambda", lambda);
    if (!(lambda > 0.0)) fail_key(prefix + ".lambda", "must be > 0");
    return ParamFn::damped_exp(scale, lambda);
  }
  if (kind == "tabulated") {
    if (!ex.find(prefix + ".times")) fail_key(prefix + ".times", "required");
    if (!ex.find(prefix + ".samples"))
      fail_key(prefix + ".samples", "required");
    std::vector<double> ts, vs;
    ex.list(prefix + ".times", ts);
    ex.list(prefix + ".samples", vs);
    if (ts.size() != vs.size())
      fail_key(prefix + ".samples", "length differs from times");
    Eigen::ArrayXd t(ts.size()), v(vs.size());
    for (size_t i = 0; i < ts.size(); ++i) {
      t[i] = ts[i];
      v[i] = vs[i];
    }
    try {
      return ParamFn::tabulated(t, v);
    } catch (const std::invalid_argument& err) {
      fail_key(prefix + ".times", err.what());
    }
  }
  fail_key(prefix + ".kind", "unknown kind '" + kind + "'");
}

std::string coefficient_text(const ParamFn& p) {
  switch (p.kind) {
    case ParamKind::Constant:
      return "constant " + fmt(p.value);
    case ParamKind::DampedExp:
      return "damped-exp scale=" + fmt(p.scale) + " lambda=" + fmt(p.lambda);
    case ParamKind::Tabulated: {
      std::string out = "tabulated";
      for (int i = 0; i < p.times.size(); ++i)
        out += " (" + fmt(p.times[i]) + "," + fmt(p.samples[i]) + ")";
      return out;
    }
  }
  return "";
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, Entry> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!allowed_keys().count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    if (kv.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        key + "' (first at line " +
                        std::to_string(kv[key].line) + ")");
    kv[key] = {value, lineno};
  }

  Extractor ex(std::move(kv));
  RunConfig cfg;

  ex.text("scenario", cfg.scenario);
  static const std::set<std::string> scenarios = {
      "simulate", "transform-check", "friedrichs",
      "blowup-scan", "norms", "bounds-report"};
  if (!scenarios.count(cfg.scenario))
    fail_key("scenario", "unknown scenario '" + cfg.scenario + "'");

  ex.integer("grid.n", cfg.grid_n);
  if (cfg.grid_n < 16 || (cfg.grid_n & (cfg.grid_n - 1)) != 0)
    fail_key("grid.n", "must be a power of two >= 16");
  ex.number("grid.length", cfg.grid_length);
  if (!(cfg.grid_length > 0.0) || std::isinf(cfg.grid_length))
    fail_key("grid.length", "must be finite and > 0");

  ex.number("t_end", cfg.t_end);
  if (!(cfg.t_end > 0.0) || std::isinf(cfg.t_end))
    fail_key("t_end", "must be finite and > 0");
  ex.number("s", cfg.s);
  ex.text("rhs.form", cfg.rhs_form);
  if (cfg.rhs_form != "nonlocal" && cfg.rhs_form != "momentum")
    fail_key("rhs.form", "must be nonlocal or momentum");

  cfg.u0.kind = "gaussian-bump";
  cfg.sigma0.kind = "zero";
  extract_data(ex, "u0", cfg.u0);
  extract_data(ex, "sigma0", cfg.sigma0);

  ex.text("params.preset", cfg.params_preset);
  ex.number("params.b", cfg.b);
  ex.number("params.kappa", cfg.kappa);
  ex.number("params.lambda", cfg.lambda);
  const bool coef_keys =
      ex.has_prefix("params.alpha.") || ex.has_prefix("params.beta.") ||
      ex.has_prefix("params.gamma.") || ex.has_prefix("params.xi.");
  if (cfg.params_preset == "custom") {
    cfg.custom_given = true;
    cfg.custom_alpha = extract_coefficient(ex, "params.alpha");
    cfg.custom_beta = extract_coefficient(ex, "params.beta");
    cfg.custom_gamma = extract_coefficient(ex, "params.gamma");
    cfg.custom_xi = extract_coefficient(ex, "params.xi");
  } else if (cfg.params_preset == "constant" || cfg.params_preset == "damped") {
    if (coef_keys)
      fail_key("params.preset",
               "per-coefficient keys require params.preset = custom");
    if (cfg.params_preset == "damped" && !(cfg.lambda > 0.0))
      fail_key("params.lambda", "must be > 0");
  } else {
    fail_key("params.preset", "must be constant, damped or custom");
  }

  ex.number("step.dt_init", cfg.step.dt_init);
  ex.number("step.cfl", cfg.step.cfl);
  ex.number("step.dt_min", cfg.step.dt_min);
  ex.number("step.blowup_slope_threshold", cfg.step.blowup_slope_threshold);
  ex.number("step.norm_guard", cfg.step.norm_guard);
  ex.number("step.frame_interval", cfg.step.frame_interval);
  if (!(cfg.step.dt_init > 0.0)) fail_key("step.dt_init", "must be > 0");
  if (!(cfg.step.cfl > 0.0 && cfg.step.cfl <= 1.0))
    fail_key("step.cfl", "must be in (0, 1]");
  if (!(cfg.step.dt_min > 0.0)) fail_key("step.dt_min", "must be > 0");
  if (!(cfg.step.norm_guard > 0.0)) fail_key("step.norm_guard", "must be > 0");
  if (cfg.step.frame_interval < 0.0)
    fail_key("step.frame_interval", "must be >= 0");

  ex.number("besov.p", cfg.besov_p);
  ex.number("besov.r", cfg.besov_r);
  for (auto [v, name] : {std::pair{cfg.besov_p, "besov.p"},
                         std::pair{cfg.besov_r, "besov.r"}})
    if (!(v >= 1.0) && !std::isinf(v)) fail_key(name, "must be in [1, inf]");

  ex.number("theory.C", cfg.theory_c);
  if (!(cfg.theory_c > 0.0)) fail_key("theory.C", "must be > 0");

  ex.number("transform.lambda", cfg.transform_lambda);
  if (!(cfg.transform_lambda > 0.0))
    fail_key("transform.lambda", "must be > 0");
  ex.number("transform.tolerance", cfg.transform_tolerance);
  if (!(cfg.transform_tolerance > 0.0))
    fail_key("transform.tolerance", "must be > 0");

  ex.integer("friedrichs.n_max", cfg.friedrichs_n_max);
  ex.integer("friedrichs.frames", cfg.friedrichs_frames);
  ex.integer("friedrichs.substeps", cfg.friedrichs_substeps);
  if (cfg.friedrichs_n_max < 1) fail_key("friedrichs.n_max", "must be >= 1");
  if (cfg.friedrichs_frames < 2) fail_key("friedrichs.frames", "must be >= 2");
  if (cfg.friedrichs_substeps < 1)
    fail_key("friedrichs.substeps", "must be >= 1");

  ex.list("scan.amplitudes", cfg.scan_amplitudes);

  ex.integer("seeds.count", cfg.seeds_count);
  if (cfg.seeds_count < 3) fail_key("seeds.count", "must be >= 3");

  ex.number("norms.s1", cfg.norms_s1);
  ex.number("norms.s2", cfg.norms_s2);
  ex.integer("norms.corpus", cfg.norms_corpus);
  if (cfg.norms_corpus < 1) fail_key("norms.corpus", "must be >= 1");

  ex.boolean("output.frames", cfg.output_frames);
  ex.boolean("output.traces", cfg.output_traces);

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

Grid make_grid(const RunConfig& cfg) { return Grid(cfg.grid_n, cfg.grid_length); }

Field make_data(const Grid& g, const DataSpec& d) {
  const double center = d.center < 0.0 ? 0.5 * g.length : d.center;
  if (d.kind == "zero") return Field(g);
  if (d.kind == "gaussian-bump")
    return gaussian_bump(g, d.amplitude, d.width, center);
  if (d.kind == "sine") return sine_mode(g, d.amplitude, d.wavenumber);
  if (d.kind == "smooth-peak")
    return smooth_peak(g, d.amplitude, d.sharpness, center);
  throw ConfigError("unknown data kind '" + d.kind + "'");
}

ParamSet make_params(const RunConfig& cfg) {
  if (cfg.params_preset == "constant")
    return constant_params(1.0, cfg.b, cfg.kappa, 1.0);
  if (cfg.params_preset == "damped")
    return damped_preset(cfg.b, cfg.kappa, cfg.lambda);
  ParamSet ps;
  ps.alpha = cfg.custom_alpha;
  ps.beta = cfg.custom_beta;
  ps.gamma = cfg.custom_gamma;
  ps.xi = cfg.custom_xi;
  return ps;
}

BesovSpec make_besov(const RunConfig& cfg) {
  return {cfg.s, cfg.besov_p, cfg.besov_r};
}

std::map<std::string, std::string> resolved_entries(const RunConfig& cfg) {
  std::map<std::string, std::string> out;
  out["scenario"] = cfg.scenario;
  out["grid.n"] = std::to_string(cfg.grid_n);
  out["grid.length"] = fmt(cfg.grid_length);
  out["t_end"] = fmt(cfg.t_end);
  out["s"] = fmt(cfg.s);
  out["rhs.form"] = cfg.rhs_form;
  auto put_data = [&](const std::string& prefix, const DataSpec& d) {
    out[prefix + ".kind"] = d.kind;
    out[prefix + ".amplitude"] = fmt(d.amplitude);
    out[prefix + ".width"] = fmt(d.width);
    out[prefix + ".center"] =
        fmt(d.center < 0.0 ? 0.5 * cfg.grid_length : d.center);
    out[prefix + ".wavenumber"] = std::to_string(d.wavenumber);
    out[prefix + ".sharpness"] = fmt(d.sharpness);
  };
  put_data("u0", cfg.u0);
  put_data("sigma0", cfg.sigma0);
  out["params.preset"] = cfg.params_preset;
  out["params.b"] = fmt(cfg.b);
  out["params.kappa"] = fmt(cfg.kappa);
  out["params.lambda"] = fmt(cfg.lambda);
  if (cfg.custom_given) {
    out["params.alpha"] = coefficient_text(cfg.custom_alpha);
    out["params.beta"] = coefficient_text(cfg.custom_beta);
    out["params.gamma"] = coefficient_text(cfg.custom_gamma);
    out["params.xi"] = coefficient_text(cfg.custom_xi);
  }
  out["step.dt_init"] = fmt(cfg.step.dt_init);
  out["step.cfl"] = fmt(cfg.step.cfl);
  out["step.dt_min"] = fmt(cfg.step.dt_min);
  out["step.blowup_slope_threshold"] = fmt(cfg.step.blowup_slope_threshold);
  out["step.norm_guard"] = fmt(cfg.step.norm_guard);
  out["step.frame_interval"] = fmt(cfg.step.frame_interval);
  out["besov.p"] = fmt(cfg.besov_p);
  out["besov.r"] = fmt(cfg.besov_r);
  out["theory.C"] = fmt(cfg.theory_c);
  out["transform.lambda"] = fmt(cfg.transform_lambda);
  out["transform.tolerance"] = fmt(cfg.transform_tolerance);
  out["friedrichs.n_max"] = std::to_string(cfg.friedrichs_n_max);
  out["friedrichs.frames"] = std::to_string(cfg.friedrichs_frames);
  out["friedrichs.substeps"] = std::to_string(cfg.friedrichs_substeps);
  std::string amps;
  for (size_t i = 0; i < cfg.scan_amplitudes.size(); ++i)
    amps += (i ? "," : "") + fmt(cfg.scan_amplitudes[i]);
  out["scan.amplitudes"] = amps;
  out["seeds.count"] = std::to_string(cfg.seeds_count);
  out["norms.s1"] = fmt(cfg.norms_s1);
  out["norms.s2"] = fmt(cfg.norms_s2);
  out["norms.corpus"] = std::to_string(cfg.norms_corpus);
  out["output.frames"] = cfg.output_frames ? "true" : "false";
  out["output.traces"] = cfg.output_traces ? "true" : "false";
  return out;
}

}  // namespace bfam
