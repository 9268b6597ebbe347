#include "fockde/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fockde/hash.hpp"

namespace fockde {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double log1p_exp(double x) { return x > 35.0 ? x : std::log1p(std::exp(x)); }

// log of (1 + phi'(r))^{-2}
double log_derivative_damping(const WeightProfile& w, double r) {
  return -2.0 * log1p_exp(w.log_phi_prime(r));
}

std::string index_name(const std::string& base, int i) { return base + "[" + std::to_string(i) + "]"; }

std::string index_name(const std::string& base, int i, int j) {
  return base + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

// Radius that maximises h on the bracket [lo, hi] (golden section).
double golden_max(const std::function<double(double)>& h, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double hc = h(c), hd = h(d);
  for (int it = 0; it < 80 && b - a > 1e-12 * (1.0 + b); ++it) {
    if (hc >= hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - g * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + g * (b - a);
      hd = h(d);
    }
  }
  return hc >= hd ? c : d;
}

struct ScanResult {
  double value = 0.0;
  double radius = 0.0;
};

ScanResult scan_ratio(const std::function<double(double)>& h, const SupRatioGrid& grid) {
  std::vector<double> radii{0.0};
  const double step = std::log(grid.r_max / grid.r_min) / (grid.points - 1);
  for (int i = 0; i < grid.points; ++i) radii.push_back(grid.r_min * std::exp(step * i));
  std::vector<double> vals(radii.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    vals[i] = h(radii[i]);
    if (vals[i] > vals[best]) best = i;
  }
  ScanResult out{vals[best], radii[best]};
  if (best > 0 && best + 1 < radii.size()) {
    const double r = golden_max(h, radii[best - 1], radii[best + 1]);
    const double v = h(r);
    if (v > out.value) out = {v, r};
  }
  return out;
}

// Homogeneous copy of a problem with the j-th unit initial vector.
LDEProblem unit_data_problem(const LDEProblem& problem, int j) {
  LDEProblem q = problem;
  q.forcing = EntireFunction();
  q.initial.assign(static_cast<std::size_t>(problem.k), cplx{0.0, 0.0});
  q.initial[static_cast<std::size_t>(j)] = 1.0;
  return q;
}

// Solutions spanning the solution set: the problem's own data, then the
// homogeneous unit basis.
void probe_solutions(const LDEProblem& problem, const SpaceSpec& space, const CheckConfig& cfg,
                     ConditionReport& report) {
  if (!report.hypothesis_satisfied && !cfg.probe_unsatisfied) {
    report.notes.push_back("conclusion probes skipped: hypothesis not satisfied");
    return;
  }
  {
    const EntireFunction f = taylor_solve(problem, cfg.taylor_order);
    report.probes.push_back(to_probe("solution(initial data)", membership_probe(f, space, cfg.quad)));
  }
  for (int j = 0; j < problem.k; ++j) {
    const EntireFunction f = taylor_solve(unit_data_problem(problem, j), cfg.taylor_order);
    report.probes.push_back(
        to_probe("homogeneous solution e" + std::to_string(j), membership_probe(f, space, cfg.quad)));
  }
}

double sup_or_inf(double weight, const SupRatio& s) {
  if (std::isinf(s.value)) return kInf;
  return weight * s.value;
}

// M_n(z) = int_0^z zeta^n A(zeta) dzeta, n = 0..N, on a Gauss-Legendre segment rule.
void segment_moments(const EntireFunction& A, cplx z, const GaussLegendreRule& gl, std::span<cplx> out) {
  std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const cplx zeta = 0.5 * (1.0 + gl.nodes[i]) * z;
    const cplx a = A(zeta) * (0.5 * gl.weights[i]);
    cplx pw = 1.0;
    for (auto& m : out) {
      m += pw * a;
      pw *= zeta;
    }
  }
  for (auto& m : out) m *= z;
}

std::vector<cplx> ring_points(const std::vector<double>& radii, int n_angles) {
  std::vector<cplx> pts;
  pts.reserve(radii.size() * static_cast<std::size_t>(n_angles));
  for (double r : radii) {
    for (int j = 0; j < n_angles; ++j) pts.push_back(std::polar(r, 2.0 * kPi * j / n_angles));
  }
  return pts;
}

// Sup of `objective` over the probe grid, plus a decay check on three rings
// beyond the last radius. `noise` bounds the rounding level of the objective
// at a point, so cancellation noise is not mistaken for growth.
struct GridMax {
  double value = 0.0;
  cplx at{0.0, 0.0};
  bool tail_decay = true;
  double noise_floor = 0.0;
};

GridMax grid_max(const std::function<double(cplx)>& objective, const ProbeGrid& grid,
                 const std::function<double(cplx)>& noise = nullptr) {
  GridMax out;
  for (const cplx& z : grid.points()) {
    const double floor = noise ? noise(z) : 0.0;
    out.noise_floor = std::max(out.noise_floor, floor);
    // Values inside the rounding bound are indistinguishable from zero. The
    // bound scales with the objective, so the cut keeps positive homogeneity.
    const double raw = objective(z);
    const double v = raw <= floor ? 0.0 : raw;
    if (v > out.value || std::isnan(v)) {
      out.value = v;
      out.at = z;
    }
  }
  if (!grid.radii.empty()) {
    const double last = grid.radii.back();
    for (const cplx& z : ring_points({1.5 * last, 2.0 * last, 3.0 * last}, grid.n_angles)) {
      const double v = objective(z);
      const double floor = noise ? noise(z) : 0.0;
      if (!(v <= out.value + floor)) out.tail_decay = false;
    }
  }
  return out;
}

void require_same_profile(const WeightProfile& profile, const KernelBasis& basis) {
  if (!(profile == basis.profile)) throw std::invalid_argument("kernel basis was built for a different weight");
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1_1: return "T1.1";
    case TheoremId::T1_2: return "T1.2";
    case TheoremId::T1_3: return "T1.3";
    case TheoremId::T1_4: return "T1.4";
    case TheoremId::T1_5: return "T1.5";
    case TheoremId::T1_6: return "T1.6";
    case TheoremId::T1_7: return "T1.7";
    case TheoremId::T1_8: return "T1.8";
  }
  return "T1.1";
}

std::optional<TheoremId> parse_theorem_id(const std::string& text) {
  std::string t = text;
  if (!t.empty() && (t[0] == 'T' || t[0] == 't')) t.erase(0, 1);
  std::replace(t.begin(), t.end(), '_', '.');
  static const TheoremId ids[] = {TheoremId::T1_1, TheoremId::T1_2, TheoremId::T1_3, TheoremId::T1_4,
                                  TheoremId::T1_5, TheoremId::T1_6, TheoremId::T1_7, TheoremId::T1_8};
  for (TheoremId id : ids) {
    if ("T" + t == to_string(id)) return id;
  }
  return std::nullopt;
}

SupRatio sup_ratio(const EntireFunction& A, int s, const SupRatioGrid& grid) {
  SupRatio out;
  if (is_zero(A)) {
    out.route = "zero coefficient";
    return out;
  }
  auto ratio = [&](double r) { return max_modulus(A, r, grid.n_theta) / std::pow(1.0 + r, s); };

  if (const auto deg = polynomial_degree(A)) {
    if (*deg > s) {
      out.value = kInf;
      out.at_infinity = true;
      out.degree_flag = true;
      out.route = "degree " + std::to_string(*deg) + " exceeds exponent " + std::to_string(s);
      return out;
    }
    const ScanResult scan = scan_ratio(ratio, grid);
    out.value = scan.value;
    out.attained_at = scan.radius;
    out.route = "radial grid with golden-section refinement";
    if (*deg == s) {
      const double limit = std::abs(polynomial_coefficients(A)->back());
      if (limit >= out.value) {
        out.value = limit;
        out.at_infinity = true;
        out.route += "; limit |leading coefficient| as r -> inf";
      }
    }
    return out;
  }

  // Non-polynomial: a doubling test separates polynomial-like growth from
  // anything faster.
  try {
    const double m16 = max_modulus(A, 16.0, grid.n_theta);
    const double m32 = max_modulus(A, 32.0, grid.n_theta);
    const double slope = std::log2(m32 / m16);
    if (!std::isfinite(slope) || slope > s + 0.5) {
      out.value = kInf;
      out.at_infinity = true;
      out.growth_flag = true;
      out.route = "max modulus doubling test: growth exponent " + std::to_string(slope);
      return out;
    }
    const ScanResult scan = scan_ratio(ratio, grid);
    out.value = scan.value;
    out.attained_at = scan.radius;
    out.route = "radial grid on a non-polynomial coefficient";
  } catch (const std::domain_error& e) {
    out.value = kInf;
    out.at_infinity = true;
    out.growth_flag = true;
    out.route = std::string("evaluation failed during growth test: ") + e.what();
  }
  return out;
}

void ConstantsConfig::validate() const {
  auto check = [](double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("constants must be positive and finite");
  };
  check(C);
  check(G);
  for (const auto* v : {&D, &Ci, &E, &F}) {
    for (double x : *v) check(x);
  }
}

ProbeGrid ProbeGrid::standard() {
  ProbeGrid g;
  g.n_angles = 16;
  const double ratio = std::pow(4.0 / 0.25, 1.0 / 11.0);
  double r = 0.25;
  for (int i = 0; i < 12; ++i, r *= ratio) g.radii.push_back(r);
  g.radii.back() = 4.0;
  return g;
}

std::vector<cplx> ProbeGrid::points() const { return ring_points(radii, n_angles); }

std::string ProbeGrid::hash() const {
  Fnv1a h;
  h.add("probe-grid").add(radii).add(static_cast<double>(n_angles));
  return h.hex();
}

ProbeResult to_probe(const std::string& label, const Membership& m) {
  ProbeResult p;
  p.label = label;
  p.in_space = m.in_space;
  p.value = m.norm.value;
  p.tail_estimate = m.norm.tail_estimate;
  p.peak_radius = m.norm.peak_radius;
  p.mass_beyond_peak = m.norm.mass_beyond_peak;
  p.divergence_radius = m.norm.divergence_radius;
  p.diagnostic = m.diagnostic;
  return p;
}

void ConditionReport::set(const std::string& name, double value) {
  for (auto& [k, v] : hypothesis_values) {
    if (k == name) {
      v = value;
      return;
    }
  }
  hypothesis_values.emplace_back(name, value);
}

std::optional<double> ConditionReport::get(const std::string& name) const {
  for (const auto& [k, v] : hypothesis_values) {
    if (k == name) return v;
  }
  return std::nullopt;
}

void ConditionReport::finalize() {
  consistent = true;
  if (!hypothesis_satisfied) return;
  for (const auto& p : probes) consistent = consistent && p.in_space;
}

ConditionReport check_fock_solutions(const LDEProblem& problem, double p, const CheckConfig& cfg) {
  problem.validate();
  cfg.constants.validate();
  const int k = problem.k;
  ConditionReport rep;
  rep.theorem = TheoremId::T1_1;

  double S = 0.0;
  bool polynomial_class = true;
  for (int i = 0; i < k; ++i) {
    const auto& Ai = problem.A[static_cast<std::size_t>(i)];
    const SupRatio sr = sup_ratio(Ai, k - i);
    rep.set(index_name("sup_ratio", i), sr.value);
    if (sr.degree_flag || sr.growth_flag) rep.notes.push_back(index_name("A", i) + ": " + sr.route);
    S += sup_or_inf(cfg.constants.C * ConstantsConfig::at(cfg.constants.D, i), sr);
    const auto deg = polynomial_degree(Ai);
    polynomial_class = polynomial_class && deg && *deg <= k - i;
  }
  rep.set("S", S);

  SpaceSpec fp;
  fp.p = p;
  const EntireFunction primitive = antiderivative(problem.forcing, k);
  const Membership pm = membership_probe(primitive, fp, cfg.quad);
  rep.set("primitive_norm", pm.norm.value);
  rep.set("primitive_in_space", pm.in_space ? 1.0 : 0.0);

  rep.hypothesis_satisfied = S < 1.0 && pm.in_space;
  rep.tag = polynomial_class ? "degenerate-compliant" : "outside polynomial class deg(A_j) <= k-j";
  rep.notes.push_back("verdict relative to configured constants");
  probe_solutions(problem, fp, cfg, rep);
  rep.finalize();
  return rep;
}

ConditionReport check_fock_sobolev_solutions(const LDEProblem& problem, double p, const CheckConfig& cfg) {
  problem.validate();
  cfg.constants.validate();
  const int k = problem.k;
  ConditionReport rep;
  rep.theorem = TheoremId::T1_2;

  double S = 0.0;
  for (int i = 0; i <= k; ++i) {
    double inner = 0.0;
    for (int j = 0; j < k; ++j) {
      const SupRatio sr = sup_ratio(problem.A[static_cast<std::size_t>(j)], k - i - j);
      rep.set(index_name("sup_ratio", i, j), sr.value);
      inner += sup_or_inf(ConstantsConfig::at(cfg.constants.E, j), sr);
    }
    S += std::isinf(inner) ? kInf : ConstantsConfig::at(cfg.constants.Ci, i) * inner;
  }
  rep.set("S", S);

  SpaceSpec sob;
  sob.p = p;
  sob.m = k;
  const EntireFunction primitive = antiderivative(problem.forcing, k);
  const Membership pm = membership_probe(primitive, sob, cfg.quad);
  rep.set("primitive_norm", pm.norm.value);
  rep.set("primitive_in_space", pm.in_space ? 1.0 : 0.0);
  rep.hypothesis_satisfied = S < 1.0 && pm.in_space;

  bool compliant = is_constant(problem.A[0]);
  for (int j = 1; j < k; ++j) compliant = compliant && is_zero(problem.A[static_cast<std::size_t>(j)]);
  rep.tag = compliant ? "degenerate-compliant" : "non-degenerate";
  if (rep.hypothesis_satisfied && !compliant) {
    rep.notes.push_back("hypothesis satisfied by a non-degenerate coefficient list");
  }
  rep.notes.push_back("verdict relative to configured constants");
  probe_solutions(problem, sob, cfg, rep);
  rep.finalize();
  return rep;
}

ConditionReport check_radial_bound_solutions(const LDEProblem& problem, const WeightProfile& profile,
                                             double p, double q, const CheckConfig& cfg) {
  problem.validate();
  const int k = problem.k;
  ConditionReport rep;
  rep.theorem = TheoremId::T1_3;

  const WeightDiagnostics diag = classify_weight(profile, 100.0, 64);
  rep.set("class_I", diag.class_I() ? 1.0 : 0.0);

  const bool forcing_nonconstant = !is_constant(problem.forcing);
  bool some_nonconstant = false;
  for (const auto& a : problem.A) some_nonconstant = some_nonconstant || !is_constant(a);
  rep.set("forcing_nonconstant", forcing_nonconstant ? 1.0 : 0.0);
  rep.set("some_coefficient_nonconstant", some_nonconstant ? 1.0 : 0.0);

  // Geometric grid on [0.25, 64]; r0 is the last radius at which the bound
  // failed (0 when it holds everywhere).
  const auto radii = geometric_radii(0.25, std::pow(256.0, 1.0 / 63.0), 64);
  double r0 = 0.0;
  int witness_j = -1;
  double witness_r = 0.0;
  for (double r : radii) {
    const double log_bound = 0.5 * profile.log_phi(r) - std::log(r);
    for (int j = 0; j < k; ++j) {
      const auto& a = problem.A[static_cast<std::size_t>(j)];
      if (is_zero(a)) continue;
      double m = 0.0;
      try {
        m = max_modulus(a, r, 256);
      } catch (const std::domain_error&) {
        m = kInf;
      }
      if (m > 0.0 && !(std::log(m) <= log_bound)) {
        r0 = r;
        witness_j = j;
        witness_r = r;
      }
    }
  }
  const bool bound_holds = witness_j < 0 || witness_r < radii.back();
  rep.set("r0", r0);
  rep.set("grid_r_max", radii.back());
  if (witness_j >= 0) {
    rep.set("witness_j", witness_j);
    rep.set("witness_r", witness_r);
  }
  if (!bound_holds) rep.notes.push_back("radial bound violated at the largest sampled radius");
  if (!forcing_nonconstant) rep.notes.push_back("forcing is constant: nonconstancy hypothesis fails");
  if (!some_nonconstant) rep.notes.push_back("all coefficients constant: nonconstancy hypothesis fails");

  rep.hypothesis_satisfied = diag.class_I() && forcing_nonconstant && some_nonconstant && bound_holds;
  SpaceSpec space;
  space.weight = profile;
  space.p = p;
  space.q = q;
  probe_solutions(problem, space, cfg, rep);
  rep.finalize();
  return rep;
}

ConditionReport check_forcing_membership(const LDEProblem& problem, double p,
                                         const std::optional<EntireFunction>& candidate,
                                         const CheckConfig& cfg) {
  problem.validate();
  const int k = problem.k;
  ConditionReport rep;
  rep.theorem = TheoremId::T1_4;
  for (const auto& a : problem.A) {
    if (!is_constant(a)) {
      rep.tag = "not applicable";
      rep.notes.push_back("coefficients A_0..A_{k-1} must be constant");
      rep.finalize();
      return rep;
    }
  }
  const EntireFunction f = candidate ? *candidate : taylor_solve(problem, cfg.taylor_order);
  if (!candidate) rep.notes.push_back("candidate: Taylor solution of the stated initial data");

  SpaceSpec sob;
  sob.p = p;
  sob.m = k;
  const Membership fm = membership_probe(f, sob, cfg.quad);
  rep.set("solution_norm", fm.norm.value);
  rep.set("solution_in_space", fm.in_space ? 1.0 : 0.0);
  rep.hypothesis_satisfied = fm.in_space;

  EntireFunction Ak = differentiate(f, k);
  for (int j = 0; j < k; ++j) Ak = Ak + problem.A[static_cast<std::size_t>(j)] * differentiate(f, j);
  SpaceSpec fp;
  fp.p = p;
  rep.probes.push_back(to_probe("forcing A_k", membership_probe(Ak, fp, cfg.quad)));
  rep.finalize();
  return rep;
}

ConditionReport check_double_exponential_coefficient(const LDEProblem& problem, double p, double q,
                                                     const EntireFunction& candidate,
                                                     const CheckConfig& cfg) {
  problem.validate();
  const int k = problem.k;
  ConditionReport rep;
  rep.theorem = TheoremId::T1_5;
  const EntireFunction& f = candidate;

  // Zero-freeness: pointwise on the tail rings and the winding number of the
  // largest ring, which counts every zero inside it.
  const std::vector<double> tail{2.0, 2.5, 3.0, 3.5, 4.0};
  const int n_arg = 1024;
  for (double r : tail) {
    for (int j = 0; j < 64; ++j) {
      if (f(std::polar(r, 2.0 * kPi * j / 64)) == cplx{0.0, 0.0}) {
        throw std::domain_error("candidate has zeros on probe set; choose different rays/annuli");
      }
    }
  }
  double winding = 0.0;
  double prev = std::arg(f(cplx{tail.back(), 0.0}));
  for (int j = 1; j <= n_arg; ++j) {
    const double cur = std::arg(f(std::polar(tail.back(), 2.0 * kPi * j / n_arg)));
    double d = cur - prev;
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    winding += d;
    prev = cur;
  }
  const long zeros = std::lround(winding / (2.0 * kPi));
  rep.set("zeros_inside_r4", static_cast<double>(zeros));
  if (zeros != 0) throw std::domain_error("candidate has zeros on probe set; choose different rays/annuli");

  // (a) growth below e^{e^r}, with a margin so that a ratio tending to 1 fails.
  double log_ratio = -kInf;
  bool growth_ok = true;
  for (double r : tail) {
    try {
      const double lr = std::log(max_modulus(f, r, 256)) - std::exp(r);
      log_ratio = std::max(log_ratio, lr);
    } catch (const std::domain_error&) {
      growth_ok = false;
      rep.notes.push_back("candidate not evaluable on the tail grid");
      break;
    }
  }
  const double ratio = std::exp(log_ratio);
  rep.set("growth_ratio_max", growth_ok ? ratio : kInf);
  growth_ok = growth_ok && ratio <= 1.0 - 1e-6;

  // (b) A_j, 1 <= j < k, in F^p with weight e^r / 2.
  SpaceSpec half;
  half.weight = WeightProfile::scaled_exponential(0.5);
  half.p = p;
  bool coeffs_ok = true;
  for (int j = 1; j < k; ++j) {
    const Membership m = membership_probe(problem.A[static_cast<std::size_t>(j)], half, cfg.quad);
    rep.set(index_name("coefficient_norm", j), m.norm.value);
    if (!m.in_space) {
      coeffs_ok = false;
      rep.set(index_name("coefficient_divergence_radius", j), m.norm.divergence_radius);
    }
  }

  EntireFunction Ak = problem.forcing;
  if (is_zero(Ak)) {
    Ak = differentiate(f, k);
    for (int j = 0; j < k; ++j) Ak = Ak + problem.A[static_cast<std::size_t>(j)] * differentiate(f, j);
    rep.notes.push_back("forcing derived from the candidate");
  }

  // (c) A_k / f pointwise, in F^{p,q} with weight e^r.
  SpaceSpec er;
  er.weight = WeightProfile::exponential(1.0);
  er.p = p;
  er.q = q;
  const Membership quotient = membership_probe([&](cplx z) { return Ak(z) / f(z); }, er, cfg.quad);
  rep.set("quotient_norm", quotient.norm.value);
  rep.set("quotient_in_space", quotient.in_space ? 1.0 : 0.0);

  rep.hypothesis_satisfied = growth_ok && coeffs_ok && quotient.in_space;
  rep.notes.push_back("rays sampled on finitely many angles; exceptional angle sets are not resolved");

  // Conclusion: A_0 = (A_k - f^(k) - sum_{j>=1} A_j f^(j)) / f pointwise.
  std::vector<EntireFunction> derivs;
  for (int j = 0; j <= k; ++j) derivs.push_back(differentiate(f, j));
  auto a0 = [&](cplx z) {
    cplx num = Ak(z) - derivs[static_cast<std::size_t>(k)](z);
    for (int j = 1; j < k; ++j) num -= problem.A[static_cast<std::size_t>(j)](z) * derivs[static_cast<std::size_t>(j)](z);
    return num / derivs[0](z);
  };
  rep.probes.push_back(to_probe("A_0", membership_probe(a0, er, cfg.quad)));
  rep.finalize();
  return rep;
}

KernelFunctional xk_functional(const WeightProfile& profile, const EntireFunction& A,
                               const KernelBasis& basis, const CheckConfig& cfg) {
  require_same_profile(profile, basis);
  const int N = basis.N;
  KernelFunctional out;
  out.grid_hash = cfg.probe.hash();
  if (N < 1) return out;

  // Q_n = int conj(eta)^{n-1} (1+phi')^{-2} e^{-phi} dm(eta), n = 1..N.
  const auto Q = plane_integral_vector(
      [&](cplx eta, std::span<cplx> o) {
        const double r = std::abs(eta);
        const double w = std::exp(-profile.phi(r) + log_derivative_damping(profile, r));
        cplx pw = w;
        const cplx ce = std::conj(eta);
        for (auto& x : o) {
          x = pw;
          pw *= ce;
        }
      },
      N, cfg.quad);
  out.converged = Q.converged;

  const auto& gl = gauss_legendre(cfg.quad.segment_nodes);
  std::vector<cplx> M(static_cast<std::size_t>(N) + 1);
  auto outer = [&](cplx z) {
    segment_moments(A, z, gl, M);
    cplx s{0.0, 0.0};
    for (int n = 1; n <= N; ++n) {
      const auto un = static_cast<std::size_t>(n);
      s += (n * std::exp(-basis.log_delta_sq[un])) * M[un] * Q.value[un - 1];
    }
    return s;
  };
  const GridMax gm = grid_max([&](cplx z) { return std::abs(outer(z)) * std::exp(-profile.phi(std::abs(z))); },
                              cfg.probe);
  out.value = gm.value;
  out.attained_at = gm.at;
  out.tail_decay = gm.tail_decay;

  const GridMax side = grid_max(
      [&](cplx z) {
        segment_moments(A, z, gl, std::span<cplx>(M.data(), 1));
        return std::abs(M[0]) * std::exp(-profile.phi(std::abs(z)));
      },
      cfg.probe);
  out.side_value = side.value;
  out.side_bounded = side.tail_decay;
  return out;
}

KernelFunctional yk_functional(const WeightProfile& profile, const EntireFunction& A,
                               const KernelBasis& basis, const CheckConfig& cfg) {
  require_same_profile(profile, basis);
  const int N = basis.N;
  KernelFunctional out;
  out.grid_hash = cfg.probe.hash();
  {
    const double g10 = 2.0 * profile.phi(10.0) - 50.0;
    const double g20 = 2.0 * profile.phi(20.0) - 200.0;
    const double g40 = 2.0 * profile.phi(40.0) - 800.0;
    out.weight_growth = g10 < g20 && g20 < g40 && g40 > 100.0;
  }
  if (N < 1) return out;

  const auto Q = plane_integral_vector(
      [&](cplx eta, std::span<cplx> o) {
        const double r = std::abs(eta);
        const double w = std::exp(-2.0 * profile.phi(r) + 0.5 * r * r + log_derivative_damping(profile, r));
        cplx pw = w;
        const cplx ce = std::conj(eta);
        for (auto& x : o) {
          x = pw;
          pw *= ce;
        }
      },
      N, cfg.quad);
  out.converged = Q.converged;

  const auto& gl = gauss_legendre(cfg.quad.segment_nodes);
  std::vector<cplx> M(static_cast<std::size_t>(N) + 1);
  auto outer = [&](cplx z) {
    segment_moments(A, z, gl, M);
    cplx s{0.0, 0.0};
    for (int n = 1; n <= N; ++n) {
      const auto un = static_cast<std::size_t>(n);
      s += (n * std::exp(-basis.log_delta_sq[un])) * M[un] * Q.value[un - 1];
    }
    return s;
  };
  const GridMax gm = grid_max(
      [&](cplx z) {
        const double r = std::abs(z);
        return std::abs(outer(z)) * std::exp(-0.5 * r * r);
      },
      cfg.probe);
  out.value = gm.value;
  out.attained_at = gm.at;
  out.tail_decay = gm.tail_decay;

  const GridMax side = grid_max(
      [&](cplx z) {
        segment_moments(A, z, gl, std::span<cplx>(M.data(), 1));
        const double r = std::abs(z);
        return std::abs(M[0]) * std::exp(-0.5 * r * r);
      },
      cfg.probe);
  out.side_value = side.value;
  out.side_bounded = side.tail_decay;
  return out;
}

KernelFunctional zk_functional(const WeightProfile& profile, const EntireFunction& A,
                               const KernelBasis& basis, const CheckConfig& cfg) {
  require_same_profile(profile, basis);
  const int N = basis.N;
  KernelFunctional out;
  out.grid_hash = cfg.probe.hash();
  out.admissible = derivative_norm_admissible(profile, 2.0, 50.0).all();

  // P_n = int M_n(z) (1+phi')^{-2} e^{-2 phi} dm(z), n = 0..N.
  const auto& gl = gauss_legendre(cfg.quad.segment_nodes);
  const auto P = plane_integral_vector(
      [&](cplx z, std::span<cplx> o) {
        const double r = std::abs(z);
        const double w = std::exp(-2.0 * profile.phi(r) + log_derivative_damping(profile, r));
        if (w == 0.0) {
          std::fill(o.begin(), o.end(), cplx{0.0, 0.0});
          return;
        }
        segment_moments(A, z, gl, o);
        for (auto& x : o) x *= w;
      },
      N + 1, cfg.quad);
  out.converged = P.converged;

  // J(eta) = sum_n conj(eta)^n / delta_n^2 P_n.
  auto J = [&](cplx eta) {
    const cplx ce = std::conj(eta);
    cplx t = basis.step[0];
    cplx s = t * P.value[0];
    for (std::size_t n = 1; n < basis.step.size(); ++n) {
      t = t * ce * basis.step[n];
      s += t * P.value[n];
    }
    return s;
  };
  // Each |P_n| is bounded by the summed absolute mass.
  auto noise = [&](cplx eta) {
    const double ae = std::abs(eta);
    double t = basis.step[0];
    double s = t;
    for (std::size_t n = 1; n < basis.step.size(); ++n) {
      t = t * ae * basis.step[n];
      s += t;
    }
    return 1e-12 * s * P.abs_mass;
  };
  const GridMax gm = grid_max([&](cplx eta) { return std::abs(J(eta)); }, cfg.probe, noise);
  out.value = gm.value;
  out.attained_at = gm.at;
  out.tail_decay = gm.tail_decay;
  out.noise_floor = gm.noise_floor;
  return out;
}

ConditionReport check_kernel_theorem(TheoremId id, const WeightProfile& profile, const EntireFunction& A,
                                     const KernelBasis& basis, const CheckConfig& cfg) {
  if (id != TheoremId::T1_6 && id != TheoremId::T1_7 && id != TheoremId::T1_8) {
    throw std::invalid_argument("check_kernel_theorem: theorem must be T1.6, T1.7 or T1.8");
  }
  ConditionReport rep;
  rep.theorem = id;
  const bool class_I = classify_weight(profile, 100.0, 64).class_I();
  rep.set("class_I", class_I ? 1.0 : 0.0);

  KernelFunctional F;
  if (id == TheoremId::T1_6) F = xk_functional(profile, A, basis, cfg);
  else if (id == TheoremId::T1_7) F = yk_functional(profile, A, basis, cfg);
  else F = zk_functional(profile, A, basis, cfg);

  rep.set("functional", F.value);
  rep.set("functional_noise_floor", F.noise_floor);
  rep.set("attained_at_re", F.attained_at.real());
  rep.set("attained_at_im", F.attained_at.imag());
  rep.set("functional_tail_decay", F.tail_decay ? 1.0 : 0.0);
  rep.set("functional_converged", F.converged ? 1.0 : 0.0);
  if (id != TheoremId::T1_8) {
    rep.set("side_condition_sup", F.side_value);
    rep.set("side_condition_bounded", F.side_bounded ? 1.0 : 0.0);
  }
  if (id == TheoremId::T1_7) rep.set("weight_growth", F.weight_growth ? 1.0 : 0.0);
  if (id == TheoremId::T1_8) rep.set("derivative_norm_admissible", F.admissible ? 1.0 : 0.0);
  rep.notes.push_back("probe grid " + F.grid_hash + "; sup taken on the declared grid");
  rep.notes.push_back("solutions are those of f'' + A f = 0");

  rep.hypothesis_satisfied = class_I && F.converged && F.value < 1.0 && F.tail_decay && F.side_bounded &&
                             F.weight_growth && F.admissible;
  if (!rep.hypothesis_satisfied) {
    rep.notes.push_back("hypothesis not satisfied: no conclusion asserted");
    rep.finalize();
    return rep;
  }

  SpaceSpec space;
  if (id == TheoremId::T1_6) {
    space.weight = profile;
    space.p = kInf;
  } else if (id == TheoremId::T1_7) {
    space.p = kInf;
  } else {
    space.weight = profile;
    space.p = 2.0;
  }
  const std::pair<cplx, cplx> data[] = {{1.0, 0.0}, {0.0, 1.0}};
  for (const auto& [f0, f1] : data) {
    const EntireFunction f = taylor_solve(second_order_homogeneous(A, f0, f1), cfg.taylor_order);
    const EntireFunction target = id == TheoremId::T1_8 ? f : differentiate(f);
    const std::string label = std::string(id == TheoremId::T1_8 ? "f" : "f'") + " with data (" +
                              (f0 == 1.0 ? "1,0" : "0,1") + ")";
    rep.probes.push_back(to_probe(label, membership_probe(target, space, cfg.quad)));
  }
  rep.finalize();
  return rep;
}

}  // namespace fockde
