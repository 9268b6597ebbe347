#include "fockde/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fockde/battery.hpp"
#include "fockde/conditions.hpp"
#include "fockde/hash.hpp"
#include "fockde/io.hpp"
#include "fockde/kernel.hpp"
#include "fockde/ode.hpp"

namespace fockde::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 20241015;
  std::string out;
  double grid_scale = 1.0;
  std::string config;
};

// Collects everything that determines an artifact.
class Manifest {
 public:
  Manifest(std::string command, const Global& g, const QuadratureConfig& quad) {
    j_["command"] = std::move(command);
    j_["version"] = kVersion;
    j_["inputs"] = json::object();
    j_["options"] = json::object();
    j_["seed"] = g.seed;
    j_["grid_scale"] = g.grid_scale;
    j_["quadrature"] = to_json(quad);
    j_["output"] = g.out.empty() ? json(nullptr) : json(g.out);
  }

  // Reads, hashes and parses an input file.
  json input(const std::string& role, const std::string& path) {
    std::string text;
    try {
      text = read_text_file(path);
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
    json entry;
    entry["path"] = path;
    entry["fnv1a"] = Fnv1a().add(text).hex();
    j_["inputs"][role] = entry;
    try {
      return parse_json_text(text);
    } catch (const SchemaError& e) {
      throw SchemaError(path + ":" + e.path(), e.message());
    }
  }

  void option(const std::string& name, json value) { j_["options"][name] = std::move(value); }
  const json& value() const { return j_; }

 private:
  json j_;
};

template <class Parse>
auto parse_file(Manifest& m, const std::string& role, const std::string& path, Parse&& parse) {
  const json j = m.input(role, path);
  try {
    return parse(j);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ":" + e.path(), e.message());
  }
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("--p must be a positive number or 'inf'");
  }
  if (used != text.size() || !(p > 0.0)) throw InputError("--p must be a positive number or 'inf'");
  return p;
}

cplx parse_point(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw InputError("--at expects 're,im'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw InputError("--at expects 're,im'");
  }
  in >> std::ws;
  if (!in.eof()) throw InputError("--at expects 're,im'");
  return {re, im};
}

void emit(const Global& g, std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("cannot write " + path);
  if (path == g.out) out << "wrote " << path << "\n";
}

std::string csv_manifest(const Manifest& m) { return "# manifest " + m.value().dump() + "\n"; }

// ---- commands -------------------------------------------------------------

struct WeightsCheck {
  std::string weight;
  double r_max = 100.0;
  int samples = 64;
  std::string p = "2";
};

int weights_check(const WeightsCheck& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  Manifest m("weights check", g, quad);
  const WeightProfile w = parse_file(m, "weight", o.weight, [](const json& j) { return weight_from_json(j); });
  const double p = parse_p(o.p);
  if (!(o.r_max > 1.0) || o.samples < 2) throw InputError("--r-max must exceed 1 and --samples must be >= 2");
  m.option("r_max", o.r_max);
  m.option("samples", o.samples);
  m.option("p", number(p));

  const WeightDiagnostics d = classify_weight(w, o.r_max, o.samples);
  Fnv1a grid;
  for (const auto& s : d.sample_grid) grid.add(s.r);
  json rep;
  rep["manifest"] = m.value();
  rep["weight"] = to_json(w);
  rep["diagnostics"] = to_json(d);
  rep["derivative_norm_flags"] = to_json(derivative_norm_admissible(w, p, std::min(o.r_max, 50.0)));
  rep["grid_hash"] = grid.hex();
  emit(g, out, dump(rep), g.out);
  return ok;
}

struct Norm {
  std::string function;
  std::string weight;
  std::string p = "2";
  double q = 0.0;
  int m = 0;
};

int norm(const Norm& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  Manifest m("norm", g, quad);
  const EntireFunction f = parse_file(m, "function", o.function, [](const json& j) { return function_from_json(j); });
  SpaceSpec space;
  if (!o.weight.empty())
    space.weight = parse_file(m, "weight", o.weight, [](const json& j) { return weight_from_json(j); });
  space.p = parse_p(o.p);
  space.q = o.q;
  space.m = o.m;
  try {
    space.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  m.option("p", number(space.p));
  m.option("q", o.q);
  m.option("m", o.m);

  const Membership mem = membership_probe(f, space, quad);
  json sp;
  sp["weight"] = to_json(space.weight);
  sp["p"] = number(space.p);
  sp["q"] = space.q;
  sp["m"] = space.m;
  json rep;
  rep["manifest"] = m.value();
  rep["function"] = to_json(f);
  rep["space"] = sp;
  rep["in_space"] = mem.in_space;
  rep["verdict"] = mem.in_space ? "in space" : "diverging";
  rep["result"] = to_json(mem.norm);
  rep["diagnostic"] = mem.diagnostic;
  rep["grid_hash"] = config_hash(quad);
  emit(g, out, dump(rep), g.out);
  return ok;
}

struct KernelTable {
  std::string weight;
  int degree = 30;
};

int kernel_table(const KernelTable& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  Manifest m("kernel table", g, quad);
  const WeightProfile w = parse_file(m, "weight", o.weight, [](const json& j) { return weight_from_json(j); });
  if (o.degree < 0) throw InputError("--degree must be nonnegative");
  m.option("degree", o.degree);
  const KernelBasis b = compute_deltas(w, o.degree);
  std::string text = csv_manifest(m);
  text += "# grid_hash " + Fnv1a().add(to_json(w).dump()).add(static_cast<double>(o.degree)).hex() + "\n";
  text += "n,log_delta_sq,delta_sq\n";
  for (int n = 0; n <= o.degree; ++n) {
    text += std::to_string(n) + "," + format_double(b.log_delta_sq[static_cast<std::size_t>(n)]) + "," +
            format_double(b.delta_sq(n)) + "\n";
  }
  emit(g, out, text, g.out);
  return ok;
}

struct KernelReproduce {
  std::string weight;
  std::string function;
  int degree = 40;
  std::string at = "1,0";
};

int kernel_reproduce(const KernelReproduce& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  Manifest m("kernel reproduce", g, quad);
  const WeightProfile w = parse_file(m, "weight", o.weight, [](const json& j) { return weight_from_json(j); });
  const EntireFunction f = parse_file(m, "function", o.function, [](const json& j) { return function_from_json(j); });
  const cplx at = parse_point(o.at);
  m.option("degree", o.degree);
  m.option("at", to_json(at));
  const KernelBasis b = compute_deltas(w, o.degree);
  ReproduceResult r;
  try {
    r = reproduce_check(b, f, at, quad);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  json rep;
  rep["manifest"] = m.value();
  rep["weight"] = to_json(w);
  rep["function"] = to_json(f);
  rep["at"] = to_json(at);
  rep["reproduced"] = to_json(r.reproduced);
  rep["reference"] = to_json(r.reference);
  rep["rel_err"] = number(r.rel_err);
  rep["converged"] = r.converged;
  rep["grid_hash"] = config_hash(quad);
  emit(g, out, dump(rep), g.out);
  return ok;
}

struct Solve {
  std::string problem;
  std::string weight;
  double theta = 0.0;
  double r_max = 5.0;
  int samples = 64;
  double tol = 1e-10;
  int order = 200;
  double r0 = 0.5;
};

int solve(const Solve& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  if (g.out.empty()) throw InputError("solve writes a CSV and a series file; --out is required");
  Manifest m("solve", g, quad);
  const LDEProblem p = parse_file(m, "problem", o.problem, [](const json& j) { return problem_from_json(j); });
  WeightProfile w = WeightProfile::classical_gaussian();
  if (!o.weight.empty()) w = parse_file(m, "weight", o.weight, [](const json& j) { return weight_from_json(j); });
  if (!(o.r_max > 0.0) || o.samples < 1 || !(o.tol > 0.0) || o.order < p.k || !(o.r0 > 0.0))
    throw InputError("solve: need r_max > 0, samples >= 1, tol > 0, order >= k and r0 > 0");
  m.option("theta", o.theta);
  m.option("r_max", o.r_max);
  m.option("samples", o.samples);
  m.option("tol", o.tol);
  m.option("order", o.order);
  m.option("r0", o.r0);

  const std::vector<double> radii = uniform_radii(o.r_max, o.samples);
  const RayTrace tr = ray_integrate(p, o.theta, radii, o.tol);
  const GrowthEnvelope env = growth_envelope(p, o.theta, radii, o.r0);

  std::string csv = csv_manifest(m);
  csv += "# grid_hash " + Fnv1a().add(std::span<const double>(radii)).add(o.theta).hex() + "\n";
  csv += "# envelope C " + format_double(env.C) + " k_c " + std::to_string(env.k_c) + " delta " +
         format_double(env.delta) + " R0 " + format_double(env.R0) + (env.note.empty() ? "" : " note " + env.note) + "\n";
  csv += "# steps " + std::to_string(tr.steps) + " rejected " + std::to_string(tr.rejected) + "\n";
  if (tr.blowup) csv += "# blowup beyond r " + format_double(tr.last_radius) + "\n";
  csv += "theta,r,re_f,im_f,abs_f,envelope,weighted_abs_f\n";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (tr.blowup && radii[i] > tr.last_radius) break;
    const cplx f = tr.values[i][0];
    const double weighted = std::exp(std::log(std::abs(f)) - w.phi(radii[i]));
    csv += format_double(o.theta) + "," + format_double(radii[i]) + "," + format_double(f.real()) + "," +
           format_double(f.imag()) + "," + format_double(std::abs(f)) + "," + format_double(env.bound[i]) + "," +
           format_double(weighted) + "\n";
  }
  emit(g, out, csv, g.out);

  const std::vector<cplx> coeffs = taylor_solution_coefficients(p, o.order);
  json series;
  series["manifest"] = m.value();
  series["problem"] = to_json(p);
  series["order"] = o.order;
  series["function"] = to_json(EntireFunction::power_series(coeffs));
  emit(g, out, dump(series), g.out + ".series.json");
  return ok;
}

struct Envelope {
  std::string problem;
  double theta = 0.0;
  double r0 = 0.5;
  double r_max = 10.0;
  int samples = 200;
};

int envelope(const Envelope& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  Manifest m("envelope", g, quad);
  const LDEProblem p = parse_file(m, "problem", o.problem, [](const json& j) { return problem_from_json(j); });
  if (!(o.r0 > 0.0) || !(o.r_max > o.r0) || o.samples < 1)
    throw InputError("envelope: need 0 < r0 < r_max and samples >= 1");
  m.option("theta", o.theta);
  m.option("r0", o.r0);
  m.option("r_max", o.r_max);
  m.option("samples", o.samples);

  std::vector<double> radii;
  for (double r : uniform_radii(o.r_max, o.samples))
    if (r > o.r0) radii.push_back(r);
  const GrowthEnvelope env = growth_envelope(p, o.theta, radii, o.r0);
  const RayTrace tr = ray_integrate(p, o.theta, radii, 1e-10);
  int violations = 0, samples = 0;
  std::string rows;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (tr.blowup && radii[i] > tr.last_radius) break;
    const double f = std::abs(tr.values[i][0]);
    const bool checked = radii[i] > env.R0;
    const bool dominated = env.bound[i] >= f;
    if (checked) {
      ++samples;
      violations += dominated ? 0 : 1;
    }
    rows += format_double(o.theta) + "," + format_double(radii[i]) + "," + format_double(f) + "," +
            format_double(env.bound[i]) + "," + (checked ? (dominated ? "1" : "0") : "") + "\n";
  }
  std::string csv = csv_manifest(m);
  csv += "# grid_hash " + Fnv1a().add(std::span<const double>(radii)).add(o.theta).hex() + "\n";
  csv += "# envelope C " + format_double(env.C) + " k_c " + std::to_string(env.k_c) + " delta " +
         format_double(env.delta) + " R0 " + format_double(env.R0) + (env.R0_shifted ? " shifted" : "") +
         (env.note.empty() ? "" : " note " + env.note) + "\n";
  csv += "# samples " + std::to_string(samples) + " violations " + std::to_string(violations) + "\n";
  csv += "theta,r,abs_f,envelope,dominated\n" + rows;
  emit(g, out, csv, g.out);
  return ok;
}

struct Check {
  std::string theorem;
  std::string problem;
  std::string weight;
  std::string candidate;
  std::string constants;
  std::string p = "2";
  double q = 0.0;
  int degree = 24;
  int taylor_order = 200;
};

int check(const Check& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  const auto id = parse_theorem_id(o.theorem);
  if (!id) throw InputError("--theorem must be one of T1.1 .. T1.8");
  Manifest m("check", g, quad);
  std::optional<EntireFunction> candidate;
  const LDEProblem problem = parse_file(m, "problem", o.problem, [&](const json& j) {
    candidate = candidate_from_json(j);
    return problem_from_json(j);
  });
  std::optional<WeightProfile> weight;
  if (!o.weight.empty())
    weight = parse_file(m, "weight", o.weight, [](const json& j) { return weight_from_json(j); });
  if (!o.candidate.empty())
    candidate = parse_file(m, "candidate", o.candidate, [](const json& j) { return function_from_json(j); });
  CheckConfig cfg;
  cfg.quad = quad;
  cfg.taylor_order = o.taylor_order;
  if (!o.constants.empty())
    cfg.constants = parse_file(m, "constants", o.constants, [](const json& j) { return constants_from_json(j); });
  const double p = parse_p(o.p);
  m.option("theorem", to_string(*id));
  m.option("p", number(p));
  m.option("q", o.q);
  m.option("degree", o.degree);
  m.option("taylor_order", o.taylor_order);

  auto need_weight = [&]() -> const WeightProfile& {
    if (!weight) throw InputError(to_string(*id) + " needs --weight");
    return *weight;
  };

  ConditionReport rep;
  json extra = json::object();
  switch (*id) {
    case TheoremId::T1_1: rep = check_fock_solutions(problem, p, cfg); break;
    case TheoremId::T1_2: rep = check_fock_sobolev_solutions(problem, p, cfg); break;
    case TheoremId::T1_3: rep = check_radial_bound_solutions(problem, need_weight(), p, o.q, cfg); break;
    case TheoremId::T1_4: rep = check_forcing_membership(problem, p, candidate, cfg); break;
    case TheoremId::T1_5:
      if (!candidate) throw InputError("T1.5 needs --candidate");
      try {
        rep = check_double_exponential_coefficient(problem, p, o.q, *candidate, cfg);
      } catch (const std::domain_error& e) {
        throw InputError(e.what());
      }
      break;
    case TheoremId::T1_6:
    case TheoremId::T1_7:
    case TheoremId::T1_8: {
      if (problem.k != 2 || !is_zero(problem.A[1]) || !problem.homogeneous())
        throw InputError("T1.6-T1.8 concern f'' + A f = 0: order 2, A_1 = 0 and no forcing");
      const WeightProfile& w = need_weight();
      const KernelBasis basis = compute_deltas(w, o.degree);
      rep = check_kernel_theorem(*id, w, problem.A[0], basis, cfg);
      extra["probe_grid"] = to_json(cfg.probe);
      break;
    }
  }

  json r;
  r["manifest"] = m.value();
  r["theorem"] = to_string(*id);
  r["problem"] = to_json(problem);
  if (weight) r["weight"] = to_json(*weight);
  if (candidate) r["candidate"] = to_json(*candidate);
  r["constants"] = to_json(cfg.constants);
  r["report"] = to_json(rep);
  r["hypothesis_satisfied"] = rep.hypothesis_satisfied;
  r["consistent"] = rep.consistent;
  json hashes;
  hashes["quadrature"] = config_hash(quad);
  if (extra.contains("probe_grid")) {
    hashes["probe"] = cfg.probe.hash();
    r["probe_grid"] = extra["probe_grid"];
  }
  r["grid_hashes"] = hashes;
  emit(g, out, dump(r), g.out);
  return ok;
}

struct Battery {
  std::vector<std::string> cases;
};

int battery(const Battery& o, const Global& g, const QuadratureConfig& quad, std::ostream& out) {
  Manifest m("battery", g, quad);
  const auto known = battery_case_names();
  std::vector<std::string> names = o.cases.empty() ? known : o.cases;
  for (const auto& n : names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) throw InputError("unknown battery case '" + n + "'");
  }
  m.option("cases", names);
  json cases = json::array();
  bool all = true;
  for (const auto& n : names) {
    const BatteryCase c = run_battery_case(n, g.seed, quad);
    all = all && c.passed;
    json j;
    j["module"] = c.module;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["metric"] = number(c.metric);
    j["detail"] = c.detail;
    cases.push_back(j);
  }
  json rep;
  rep["manifest"] = m.value();
  rep["cases"] = cases;
  rep["all_passed"] = all;
  rep["grid_hash"] = config_hash(quad);
  emit(g, out, dump(rep), g.out);
  return all ? ok : numerical_failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Fock spaces, reproducing kernels and linear complex ODEs", "fockde"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "seed for randomized batteries")->capture_default_str();
  app.add_option("--out", g.out, "artifact path (stdout when absent)");
  app.add_option("--grid-scale", g.grid_scale, "multiplier for quadrature node counts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "quadrature config JSON");

  auto* weights = app.add_subcommand("weights", "weight diagnostics");
  weights->require_subcommand(1);
  WeightsCheck wc;
  auto* wcheck = weights->add_subcommand("check", "class-I diagnostics for a weight");
  wcheck->add_option("--weight", wc.weight, "weight JSON")->required();
  wcheck->add_option("--r-max", wc.r_max)->capture_default_str();
  wcheck->add_option("--samples", wc.samples)->capture_default_str();
  wcheck->add_option("--p", wc.p, "exponent for the derivative-norm flags")->capture_default_str();

  Norm nm;
  auto* norm_cmd = app.add_subcommand("norm", "weighted Fock norm of an entire function");
  norm_cmd->add_option("--function", nm.function, "function JSON")->required();
  norm_cmd->add_option("--weight", nm.weight, "weight JSON (classical when absent)");
  norm_cmd->add_option("--p", nm.p, "exponent, or 'inf'")->capture_default_str();
  norm_cmd->add_option("--q", nm.q, "power of phi in the density")->capture_default_str();
  norm_cmd->add_option("--m", nm.m, "Sobolev order")->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "reproducing kernel");
  kernel->require_subcommand(1);
  KernelTable kt;
  auto* ktable = kernel->add_subcommand("table", "log delta_n^2 and delta_n^2 as CSV");
  ktable->add_option("--weight", kt.weight, "weight JSON")->required();
  ktable->add_option("--degree", kt.degree)->capture_default_str();
  KernelReproduce kr;
  auto* krep = kernel->add_subcommand("reproduce", "reproducing-formula check at one point");
  krep->add_option("--weight", kr.weight, "weight JSON")->required();
  krep->add_option("--function", kr.function, "polynomial JSON")->required();
  krep->add_option("--degree", kr.degree)->capture_default_str();
  krep->add_option("--at", kr.at, "evaluation point 're,im'")->capture_default_str();

  Solve sv;
  auto* solve_cmd = app.add_subcommand("solve", "ray integration plus Taylor series");
  solve_cmd->add_option("--problem", sv.problem, "problem JSON")->required();
  solve_cmd->add_option("--weight", sv.weight, "weight for the weighted column (classical when absent)");
  solve_cmd->add_option("--theta", sv.theta)->capture_default_str();
  solve_cmd->add_option("--r-max", sv.r_max)->capture_default_str();
  solve_cmd->add_option("--samples", sv.samples)->capture_default_str();
  solve_cmd->add_option("--tol", sv.tol)->capture_default_str();
  solve_cmd->add_option("--order", sv.order, "Taylor order")->capture_default_str();
  solve_cmd->add_option("--r0", sv.r0, "envelope calibration radius")->capture_default_str();

  Envelope ev;
  auto* env_cmd = app.add_subcommand("envelope", "growth envelope against the ray trace");
  env_cmd->add_option("--problem", ev.problem, "problem JSON")->required();
  env_cmd->add_option("--theta", ev.theta)->capture_default_str();
  env_cmd->add_option("--r0", ev.r0)->capture_default_str();
  env_cmd->add_option("--r-max", ev.r_max)->capture_default_str();
  env_cmd->add_option("--samples", ev.samples)->capture_default_str();

  Check ck;
  auto* check_cmd = app.add_subcommand("check", "hypotheses and conclusion probes of a theorem");
  check_cmd->add_option("--theorem", ck.theorem, "T1.1 .. T1.8")->required();
  check_cmd->add_option("--problem", ck.problem, "problem JSON")->required();
  check_cmd->add_option("--weight", ck.weight, "weight JSON");
  check_cmd->add_option("--candidate", ck.candidate, "candidate solution JSON");
  check_cmd->add_option("--constants", ck.constants, "constants JSON");
  check_cmd->add_option("--p", ck.p)->capture_default_str();
  check_cmd->add_option("--q", ck.q)->capture_default_str();
  check_cmd->add_option("--degree", ck.degree, "kernel truncation degree")->capture_default_str();
  check_cmd->add_option("--taylor-order", ck.taylor_order)->capture_default_str();

  Battery bt;
  auto* battery_cmd = app.add_subcommand("battery", "run the invariant suite");
  battery_cmd->add_option("--case", bt.cases, "run only the named cases");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  try {
    QuadratureConfig quad;
    if (!g.config.empty()) {
      Manifest probe("config", g, quad);
      quad = parse_file(probe, "config", g.config, [](const json& j) { return quadrature_from_json(j); });
    }
    if (g.grid_scale != 1.0) quad = quad.scaled(g.grid_scale);

    if (wcheck->parsed()) return weights_check(wc, g, quad, out);
    if (norm_cmd->parsed()) return norm(nm, g, quad, out);
    if (ktable->parsed()) return kernel_table(kt, g, quad, out);
    if (krep->parsed()) return kernel_reproduce(kr, g, quad, out);
    if (solve_cmd->parsed()) return solve(sv, g, quad, out);
    if (env_cmd->parsed()) return envelope(ev, g, quad, out);
    if (check_cmd->parsed()) return check(ck, g, quad, out);
    if (battery_cmd->parsed()) return battery(bt, g, quad, out);
    err << "error: no command\n";
    return input_error;
  } catch (const SchemaError& e) {
    err << "schema error at " << e.path() << ": " << e.message() << "\n";
    return input_error;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return numerical_failure;
  }
}

}  // namespace fockde::cli
