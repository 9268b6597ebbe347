#include "fockde/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fockde/hash.hpp"

namespace fockde {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw SchemaError(path, message);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double real_field(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

int int_field(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string string_field(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

double optional_real(const json& j, const char* key, double fallback, const std::string& path) {
  auto it = j.find(key);
  return it == j.end() ? fallback : real_field(*it, path + "." + key);
}

std::vector<cplx> complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json complex_list_json(std::span<const cplx> zs) {
  json a = json::array();
  for (cplx z : zs) a.push_back(to_json(z));
  return a;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(path + "." + it.key(), "unknown field");
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("$", std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cplx complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {real_field(j, path), 0.0};
  if (j.is_array() && j.size() == 2)
    return {real_field(j[0], path + "[0]"), real_field(j[1], path + "[1]")};
  fail(path, "expected a number or [re, im]");
}

WeightProfile weight_from_json(const json& j, const std::string& path) {
  const std::string kind = string_field(require(j, "kind", path), path + ".kind");
  if (kind == "power") {
    check_keys(j, {"kind", "alpha"}, path);
    const double a = real_field(require(j, "alpha", path), path + ".alpha");
    if (a <= 0.0) fail(path + ".alpha", "must be positive");
    return WeightProfile::power(a);
  }
  if (kind == "exponential") {
    check_keys(j, {"kind", "beta"}, path);
    const double b = real_field(require(j, "beta", path), path + ".beta");
    if (b <= 0.0) fail(path + ".beta", "must be positive");
    return WeightProfile::exponential(b);
  }
  if (kind == "scaled_exponential") {
    check_keys(j, {"kind", "c"}, path);
    const double c = real_field(require(j, "c", path), path + ".c");
    if (c <= 0.0) fail(path + ".c", "must be positive");
    return WeightProfile::scaled_exponential(c);
  }
  if (kind == "double_exponential") {
    check_keys(j, {"kind"}, path);
    return WeightProfile::double_exponential();
  }
  if (kind == "classical_gaussian" || kind == "classical") {
    check_keys(j, {"kind"}, path);
    return WeightProfile::classical_gaussian();
  }
  fail(path + ".kind", "unknown weight kind '" + kind + "'");
}

json to_json(const WeightProfile& w) {
  json j;
  j["kind"] = to_string(w.kind());
  switch (w.kind()) {
    case WeightKind::power: j["alpha"] = w.parameter(); break;
    case WeightKind::exponential: j["beta"] = w.parameter(); break;
    case WeightKind::scaled_exponential: j["c"] = w.parameter(); break;
    default: break;
  }
  return j;
}

EntireFunction function_from_json(const json& j, const std::string& path) {
  const std::string type = string_field(require(j, "type", path), path + ".type");
  if (type == "zero") {
    check_keys(j, {"type"}, path);
    return EntireFunction();
  }
  if (type == "poly") {
    check_keys(j, {"type", "coeffs"}, path);
    return EntireFunction::polynomial(complex_list(require(j, "coeffs", path), path + ".coeffs"));
  }
  if (type == "series") {
    check_keys(j, {"type", "coeffs", "tail_tol"}, path);
    auto c = complex_list(require(j, "coeffs", path), path + ".coeffs");
    if (c.empty()) fail(path + ".coeffs", "series needs at least one coefficient");
    const double tol = optional_real(j, "tail_tol", 1e-12, path);
    if (tol <= 0.0) fail(path + ".tail_tol", "must be positive");
    return EntireFunction::power_series(std::move(c), tol);
  }
  if (type == "named") {
    check_keys(j, {"type", "name", "c", "m"}, path);
    const std::string name = string_field(require(j, "name", path), path + ".name");
    if (name == "cos") return EntireFunction::cos();
    if (name == "sin") return EntireFunction::sin();
    if (name == "exp") return EntireFunction::exp_scaled(1.0);
    if (name == "exp_scaled")
      return EntireFunction::exp_scaled(complex_from_json(require(j, "c", path), path + ".c"));
    if (name == "constant")
      return EntireFunction::constant(complex_from_json(require(j, "c", path), path + ".c"));
    if (name == "monomial") {
      const int m = int_field(require(j, "m", path), path + ".m");
      if (m < 0) fail(path + ".m", "must be nonnegative");
      return EntireFunction::monomial(m);
    }
    fail(path + ".name", "unknown function name '" + name + "'");
  }
  if (type == "sum") {
    check_keys(j, {"type", "terms"}, path);
    const json& t = require(j, "terms", path);
    if (!t.is_array()) fail(path + ".terms", "expected an array");
    std::vector<EntireFunction> terms;
    for (std::size_t i = 0; i < t.size(); ++i)
      terms.push_back(function_from_json(t[i], path + ".terms[" + std::to_string(i) + "]"));
    return EntireFunction::sum(std::move(terms));
  }
  if (type == "product") {
    check_keys(j, {"type", "factors"}, path);
    const json& t = require(j, "factors", path);
    if (!t.is_array() || t.empty()) fail(path + ".factors", "expected a nonempty array");
    EntireFunction f = function_from_json(t[0], path + ".factors[0]");
    for (std::size_t i = 1; i < t.size(); ++i)
      f = EntireFunction::product(f, function_from_json(t[i], path + ".factors[" + std::to_string(i) + "]"));
    return f;
  }
  if (type == "scaled") {
    check_keys(j, {"type", "factor", "inner"}, path);
    return EntireFunction::scaled(complex_from_json(require(j, "factor", path), path + ".factor"),
                                  function_from_json(require(j, "inner", path), path + ".inner"));
  }
  fail(path + ".type", "unknown function type '" + type + "'");
}

json to_json(const EntireFunction& f) {
  struct Visitor {
    json operator()(const SeriesRep& s) const {
      json j;
      j["type"] = s.polynomial ? "poly" : "series";
      j["coeffs"] = complex_list_json(s.coeffs);
      if (!s.polynomial) j["tail_tol"] = s.tail_tol;
      return j;
    }
    json operator()(const NamedRep& n) const {
      json j;
      j["type"] = "named";
      switch (n.kind) {
        case NamedKind::cos: j["name"] = "cos"; break;
        case NamedKind::sin: j["name"] = "sin"; break;
        case NamedKind::exp_scaled: j["name"] = "exp_scaled"; j["c"] = to_json(n.c); break;
        case NamedKind::constant: j["name"] = "constant"; j["c"] = to_json(n.c); break;
        case NamedKind::monomial: j["name"] = "monomial"; j["m"] = n.m; break;
      }
      return j;
    }
    json operator()(const SumRep& s) const {
      json j;
      j["type"] = "sum";
      j["terms"] = json::array();
      for (const auto& t : s.terms) j["terms"].push_back(to_json(t));
      return j;
    }
    json operator()(const std::shared_ptr<const ProductRep>& p) const {
      json j;
      j["type"] = "product";
      j["factors"] = json::array({to_json(p->lhs), to_json(p->rhs)});
      return j;
    }
    json operator()(const std::shared_ptr<const ScaledRep>& s) const {
      json j;
      j["type"] = "scaled";
      j["factor"] = to_json(s->factor);
      j["inner"] = to_json(s->inner);
      return j;
    }
  };
  return std::visit(Visitor{}, f.rep());
}

LDEProblem problem_from_json(const json& j, const std::string& path) {
  check_keys(j, {"order", "initial", "coefficients", "forcing", "candidate"}, path);
  LDEProblem p;
  p.k = int_field(require(j, "order", path), path + ".order");
  if (p.k < 1) fail(path + ".order", "must be at least 1");
  p.initial = complex_list(require(j, "initial", path), path + ".initial");
  if (static_cast<int>(p.initial.size()) != p.k)
    fail(path + ".initial", "expected " + std::to_string(p.k) + " entries");
  p.A.assign(static_cast<std::size_t>(p.k), EntireFunction());
  if (auto it = j.find("coefficients"); it != j.end()) {
    const std::string cpath = path + ".coefficients";
    if (!it->is_array()) fail(cpath, "expected an array");
    if (static_cast<int>(it->size()) != p.k) fail(cpath, "expected " + std::to_string(p.k) + " entries");
    for (std::size_t i = 0; i < it->size(); ++i)
      p.A[i] = function_from_json((*it)[i], cpath + "[" + std::to_string(i) + "]");
  }
  if (auto it = j.find("forcing"); it != j.end()) p.forcing = function_from_json(*it, path + ".forcing");
  return p;
}

std::optional<EntireFunction> candidate_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find("candidate");
  if (it == j.end()) return std::nullopt;
  return function_from_json(*it, path + ".candidate");
}

json to_json(const LDEProblem& problem) {
  json j;
  j["order"] = problem.k;
  j["initial"] = complex_list_json(problem.initial);
  j["coefficients"] = json::array();
  for (const auto& a : problem.A) j["coefficients"].push_back(to_json(a));
  j["forcing"] = to_json(problem.forcing);
  return j;
}

QuadratureConfig quadrature_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, {"n_radial", "n_angular", "r_max", "radial_rule", "tail_tol", "segment_nodes",
                 "panel_width", "hard_cap"},
             path);
  QuadratureConfig cfg;
  if (auto it = j.find("n_radial"); it != j.end()) cfg.n_radial = int_field(*it, path + ".n_radial");
  if (auto it = j.find("n_angular"); it != j.end()) cfg.n_angular = int_field(*it, path + ".n_angular");
  if (auto it = j.find("segment_nodes"); it != j.end())
    cfg.segment_nodes = int_field(*it, path + ".segment_nodes");
  if (auto it = j.find("r_max"); it != j.end() && !it->is_null()) {
    const double r = real_field(*it, path + ".r_max");
    if (r <= 0.0) fail(path + ".r_max", "must be positive");
    cfg.r_max = r;
  }
  if (auto it = j.find("radial_rule"); it != j.end()) {
    const std::string rule = string_field(*it, path + ".radial_rule");
    if (rule == "gauss_legendre_panels") cfg.radial_rule = RadialRule::gauss_legendre_panels;
    else if (rule == "trapezoid_geometric") cfg.radial_rule = RadialRule::trapezoid_geometric;
    else fail(path + ".radial_rule", "unknown radial rule '" + rule + "'");
  }
  cfg.tail_tol = optional_real(j, "tail_tol", cfg.tail_tol, path);
  cfg.panel_width = optional_real(j, "panel_width", cfg.panel_width, path);
  cfg.hard_cap = optional_real(j, "hard_cap", cfg.hard_cap, path);
  if (cfg.n_radial < 32) fail(path + ".n_radial", "must be at least 32");
  if (cfg.n_angular < 64) fail(path + ".n_angular", "must be at least 64");
  if (cfg.segment_nodes < 16) fail(path + ".segment_nodes", "must be at least 16");
  if (cfg.tail_tol <= 0.0) fail(path + ".tail_tol", "must be positive");
  if (cfg.panel_width <= 0.0) fail(path + ".panel_width", "must be positive");
  if (cfg.hard_cap <= 0.0) fail(path + ".hard_cap", "must be positive");
  return cfg;
}

json to_json(const QuadratureConfig& cfg) {
  json j;
  j["n_radial"] = cfg.n_radial;
  j["n_angular"] = cfg.n_angular;
  j["r_max"] = cfg.r_max ? json(*cfg.r_max) : json(nullptr);
  j["radial_rule"] = cfg.radial_rule == RadialRule::gauss_legendre_panels ? "gauss_legendre_panels"
                                                                          : "trapezoid_geometric";
  j["tail_tol"] = cfg.tail_tol;
  j["segment_nodes"] = cfg.segment_nodes;
  j["panel_width"] = cfg.panel_width;
  j["hard_cap"] = cfg.hard_cap;
  return j;
}

std::string config_hash(const QuadratureConfig& cfg) {
  Fnv1a h;
  h.add(to_json(cfg).dump());
  return h.hex();
}

ConstantsConfig constants_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, {"C", "D", "Ci", "E", "F", "G", "missing_entries"}, path);
  auto positive = [&](const json& v, const std::string& p) {
    const double x = real_field(v, p);
    if (x <= 0.0) fail(p, "constants must be positive");
    return x;
  };
  auto list = [&](const char* key) {
    std::vector<double> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    const std::string p = path + "." + key;
    if (!it->is_array()) fail(p, "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) out.push_back(positive((*it)[i], p + "[" + std::to_string(i) + "]"));
    return out;
  };
  ConstantsConfig c;
  if (auto it = j.find("C"); it != j.end()) c.C = positive(*it, path + ".C");
  if (auto it = j.find("G"); it != j.end()) c.G = positive(*it, path + ".G");
  if (auto it = j.find("missing_entries"); it != j.end() && real_field(*it, path + ".missing_entries") != 1.0)
    fail(path + ".missing_entries", "missing entries always read as 1");
  c.D = list("D");
  c.Ci = list("Ci");
  c.E = list("E");
  c.F = list("F");
  return c;
}

json to_json(const ConstantsConfig& c) {
  json j;
  j["C"] = c.C;
  j["D"] = c.D;
  j["Ci"] = c.Ci;
  j["E"] = c.E;
  j["F"] = c.F;
  j["G"] = c.G;
  j["missing_entries"] = 1.0;
  return j;
}

json to_json(const NormResult& r) {
  json j;
  j["value"] = number(r.value);
  j["integral"] = number(r.integral);
  j["tail"] = number(r.tail_estimate);
  j["converged"] = r.converged;
  j["verdict"] = r.converged ? "converged" : "diverging";
  j["peak_radius"] = number(r.peak_radius);
  j["mass_beyond_peak"] = number(r.mass_beyond_peak);
  j["r_reached"] = number(r.r_reached);
  j["divergence_radius"] = number(r.divergence_radius);
  j["quasi_norm"] = r.quasi_norm;
  j["diagnostic"] = r.diagnostic;
  return j;
}

json to_json(const WeightDiagnostics& d) {
  json j;
  j["class_I"] = d.class_I();
  j["laplacian_positive"] = d.laplacian_positive;
  j["tau_vanishes"] = d.tau_vanishes;
  j["tau_monotone_tail"] = d.tau_monotone_tail;
  j["tau_tail_log_slope"] = number(d.tau_tail_log_slope);
  j["regularity_route"] = to_string(d.regularity_route);
  j["route_exponent"] = number(d.route_exponent);
  j["tau_prime_log_tail"] = number(d.tau_prime_log_tail);
  j["phi_over_r2_diverges"] = d.phi_over_r2_diverges;
  j["r_max"] = number(d.r_max);
  json grid = json::array();
  for (const auto& s : d.sample_grid)
    grid.push_back(json::array({number(s.r), number(s.log_laplacian), number(s.log_tau)}));
  j["sample_grid_columns"] = json::array({"r", "log_laplacian", "log_tau"});
  j["sample_grid"] = std::move(grid);
  j["notes"] = d.notes;
  return j;
}

json to_json(const DerivativeNormFlags& f) {
  json j;
  j["all"] = f.all();
  j["derivative_nonzero"] = f.derivative_nonzero;
  j["decay"] = f.decay;
  j["bracket_below_p"] = f.bracket_below_p;
  j["liminf"] = number(f.liminf);
  j["limsup"] = number(f.limsup);
  j["decay_log_value"] = number(f.decay_log_value);
  return j;
}

json to_json(const ProbeResult& p) {
  json j;
  j["label"] = p.label;
  j["in_space"] = p.in_space;
  j["verdict"] = p.in_space ? "in space" : "diverging";
  j["value"] = number(p.value);
  j["tail"] = number(p.tail_estimate);
  j["peak_radius"] = number(p.peak_radius);
  j["mass_beyond_peak"] = number(p.mass_beyond_peak);
  j["divergence_radius"] = number(p.divergence_radius);
  j["diagnostic"] = p.diagnostic;
  return j;
}

json to_json(const ConditionReport& r) {
  json j;
  j["theorem"] = to_string(r.theorem);
  json hv;
  for (const auto& [name, value] : r.hypothesis_values) hv[name] = number(value);
  j["hypothesis_values"] = hv.is_null() ? json::object() : hv;
  j["hypothesis_satisfied"] = r.hypothesis_satisfied;
  j["verdicts_relative_to"] = "configured constants";
  j["tag"] = r.tag;
  j["probes"] = json::array();
  for (const auto& p : r.probes) j["probes"].push_back(to_json(p));
  j["consistent"] = r.consistent;
  j["notes"] = r.notes;
  return j;
}

json to_json(const KernelFunctional& k) {
  json j;
  j["value"] = number(k.value);
  j["attained_at"] = to_json(k.attained_at);
  j["side_value"] = number(k.side_value);
  j["side_bounded"] = k.side_bounded;
  j["tail_decay"] = k.tail_decay;
  j["weight_growth"] = k.weight_growth;
  j["admissible"] = k.admissible;
  j["converged"] = k.converged;
  j["noise_floor"] = number(k.noise_floor);
  j["grid_hash"] = k.grid_hash;
  return j;
}

json to_json(const ProbeGrid& g) {
  json j;
  j["radii"] = json::array();
  for (double r : g.radii) j["radii"].push_back(number(r));
  j["n_angles"] = g.n_angles;
  j["hash"] = g.hash();
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace fockde
