#include "fockde/battery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "fockde/kernel.hpp"
#include "fockde/weights.hpp"

namespace fockde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

BatteryCase make_case(const std::string& name, bool passed, double metric, std::string detail) {
  const auto dot = name.find('.');
  return {name.substr(0, dot), name, passed, metric, std::move(detail)};
}

std::vector<WeightProfile> class_one_profiles() {
  return {WeightProfile::power(2.5),         WeightProfile::power(3.0),
          WeightProfile::power(5.0),         WeightProfile::exponential(1.0),
          WeightProfile::scaled_exponential(0.5), WeightProfile::double_exponential()};
}

double profile_r_max(const WeightProfile& w) {
  return w.kind() == WeightKind::double_exponential ? 5.0 : 100.0;
}

// ---- weights --------------------------------------------------------------

BatteryCase tau_laplacian_identity(std::uint64_t seed) {
  SeededRng rng(seed);
  double worst = 0.0;
  for (const auto& w : class_one_profiles()) {
    for (int i = 0; i < 20; ++i) {
      const double r = rng.uniform(1.0, profile_r_max(w));
      const double t = tau(w, r, 1.0);
      worst = std::max(worst, std::abs(t * t * laplacian_radial(w, r) - 1.0));
    }
  }
  return make_case("weights.tau_laplacian_identity", worst <= 4.0 * kEps, worst,
                   "max |tau^2 * laplacian - 1| over 6 profiles x 20 radii");
}

BatteryCase power_classification(std::uint64_t) {
  bool ok = true;
  std::string detail;
  for (double alpha : {1.0, 2.0, 2.5, 3.0, 5.0}) {
    const bool c1 = classify_weight(WeightProfile::power(alpha), 100.0, 64).class_I();
    ok = ok && c1 == (alpha > 2.0);
    detail += fmt("alpha=%g:", alpha) + (c1 ? "class I " : "not class I ");
  }
  return make_case("weights.power_classification", ok, 0.0, detail);
}

BatteryCase finite_difference_derivatives(std::uint64_t seed) {
  SeededRng rng(seed);
  double worst = 0.0;
  for (const auto& w : class_one_profiles()) {
    const double hi = w.kind() == WeightKind::double_exponential ? 3.0 : 10.0;
    for (int i = 0; i < 20; ++i) {
      const double r = rng.uniform(0.5, hi);
      const double h = 1e-5 * (1.0 + r);
      const double d1 = (w.phi(r + h) - w.phi(r - h)) / (2.0 * h);
      const double d2 = (w.phi_prime(r + h) - w.phi_prime(r - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(d1 - w.phi_prime(r)) / std::abs(w.phi_prime(r)));
      worst = std::max(worst, std::abs(d2 - w.phi_second(r)) / std::abs(w.phi_second(r)));
    }
  }
  return make_case("weights.finite_difference_derivatives", worst <= 1e-6, worst,
                   "max relative gap between central differences and phi', phi''");
}

// ---- entire ---------------------------------------------------------------

BatteryCase derivative_of_primitive(std::uint64_t seed) {
  SeededRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const EntireFunction p = random_polynomial(rng, rng.integer(0, 6));
    const auto a = *polynomial_coefficients(p);
    const auto b = polynomial_coefficients(differentiate(antiderivative(p, 1), 1)).value_or(std::vector<cplx>{});
    if (a.size() != b.size()) return make_case("entire.derivative_of_primitive", false, 1.0, "length mismatch");
    // (x / (n+1)) * (n+1) is x up to one rounding of each part.
    for (std::size_t n = 0; n < a.size(); ++n) {
      const auto part = [](double x, double y) { return x == y ? 0.0 : std::abs(x - y) / std::abs(x); };
      worst = std::max({worst, part(a[n].real(), b[n].real()), part(a[n].imag(), b[n].imag())});
    }
  }
  return make_case("entire.derivative_of_primitive", worst <= kEps, worst,
                   "max componentwise relative coefficient gap, bound: one rounding");
}

BatteryCase max_modulus_resolution(std::uint64_t seed) {
  SeededRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const EntireFunction p = random_polynomial(rng, rng.integer(1, 6));
    const double r = rng.uniform(0.5, 3.0);
    worst = std::max(worst, std::abs(max_modulus(p, r, 256) - max_modulus(p, r, 1024)) / max_modulus(p, r, 1024));
  }
  return make_case("entire.max_modulus_resolution", worst <= 1e-10, worst,
                   "relative gap between 256 and 1024 angles");
}

BatteryCase cauchy_associativity(std::uint64_t seed) {
  // Small Gaussian-integer coefficients keep every product and sum exact.
  SeededRng rng(seed);
  auto draw = [&] {
    std::vector<cplx> c(static_cast<std::size_t>(rng.integer(1, 5)));
    for (auto& x : c) x = cplx(rng.integer(-4, 4), rng.integer(-4, 4));
    return c;
  };
  int mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    const auto left = series_multiply(series_multiply(a, b, 12), c, 12);
    const auto right = series_multiply(a, series_multiply(b, c, 12), 12);
    if (left != right) ++mismatches;
  }
  return make_case("entire.cauchy_associativity", mismatches == 0, mismatches,
                   "triples with an inexact match, N = 12");
}

// ---- quadrature -----------------------------------------------------------

BatteryCase homogeneity(std::uint64_t seed, const QuadratureConfig& quad) {
  SeededRng rng(seed);
  const EntireFunction f = random_polynomial(rng, 3);
  std::vector<SpaceSpec> spaces(5);
  spaces[1].p = 1.0;
  spaces[2].p = std::numeric_limits<double>::infinity();
  spaces[3].m = 1;
  spaces[4].weight = WeightProfile::power(3.0);
  spaces[4].q = 1.0;
  double worst = 0.0;
  for (const auto& s : spaces) {
    cplx c = rng.in_disc(3.0);
    if (std::abs(c) < 0.1) c += 0.5;
    const NormResult a = weighted_norm(f, s, quad);
    const NormResult b = weighted_norm(EntireFunction::scaled(c, f), s, quad);
    worst = std::max(worst, std::abs(b.value - std::abs(c) * a.value) / (std::abs(c) * a.value));
  }
  return make_case("quadrature.homogeneity", worst <= 1e-12, worst, "max |N(cf) - |c| N(f)| / (|c| N(f)) over 5 spaces");
}

BatteryCase truncation_refinement(std::uint64_t, const QuadratureConfig& quad) {
  const EntireFunction f = EntireFunction::polynomial({1.0, 0.5, 1.0});
  QuadratureConfig fine = quad;
  fine.n_radial *= 2;
  fine.n_angular *= 2;
  double worst = 0.0;
  bool converged = true;
  for (const auto& w : {WeightProfile::classical_gaussian(), WeightProfile::power(4.0)}) {
    SpaceSpec s;
    s.weight = w;
    const NormResult a = weighted_norm(f, s, quad);
    const NormResult b = weighted_norm(f, s, fine);
    converged = converged && a.converged && b.converged;
    worst = std::max(worst, std::abs(a.value - b.value) / b.value);
  }
  return make_case("quadrature.truncation_refinement", converged && worst < 10.0 * quad.tail_tol, worst,
                   "relative change when node counts double");
}

BatteryCase tail_dominance(std::uint64_t, const QuadratureConfig& quad) {
  QuadratureConfig disc = quad;
  disc.r_max = 1.0;
  const std::vector<std::pair<std::string, EntireFunction>> fs = {
      {"1", EntireFunction::constant(1.0)},
      {"z", EntireFunction::monomial(1)},
      {"z^2", EntireFunction::monomial(2)},
      {"cos", EntireFunction::cos()}};
  bool ok = true;
  double worst = 0.0;
  std::string detail = "C_obs = full / outer:";
  for (const auto& [label, f] : fs) {
    SpaceSpec s;
    const NormResult full = weighted_norm(f, s, quad);
    const NormResult inner = weighted_norm(f, s, disc);
    const double outer = full.integral - inner.integral;
    const double c = full.integral / outer;
    ok = ok && full.converged && outer > 0.0 && std::isfinite(c) && c >= 1.0;
    worst = std::max(worst, c);
    detail += " " + label + "=" + fmt("%.6g", c);
  }
  return make_case("quadrature.tail_dominance", ok, worst, detail);
}

BatteryCase sup_norm_of_one(std::uint64_t, const QuadratureConfig& quad) {
  double worst = 0.0;
  bool at_origin = true;
  for (const auto& w : class_one_profiles()) {
    SpaceSpec s;
    s.weight = w;
    s.p = std::numeric_limits<double>::infinity();
    const NormResult r = weighted_norm(EntireFunction::constant(1.0), s, quad);
    const double expect = std::exp(-w.phi(0.0));
    worst = std::max(worst, std::abs(r.value - expect) / expect);
    at_origin = at_origin && r.peak_radius == 0.0;
  }
  return make_case("quadrature.sup_norm_of_one", at_origin && worst <= 4.0 * kEps, worst,
                   "relative gap to e^{-phi(0)}, peak at the origin");
}

// ---- kernel ---------------------------------------------------------------

// Radii inside the N = 40 truncation certificate.
std::vector<std::pair<WeightProfile, double>> certified_kernels() {
  return {{WeightProfile::classical_gaussian(), 2.0}, {WeightProfile::power(3.0), 1.1}};
}

BatteryCase hermitian_symmetry(std::uint64_t seed) {
  SeededRng rng(seed);
  int mismatches = 0;
  for (const auto& [w, radius] : certified_kernels()) {
    const KernelBasis b = compute_deltas(w, 40);
    for (int i = 0; i < 50; ++i) {
      const cplx z = rng.in_disc(radius), u = rng.in_disc(radius);
      if (kernel_eval(b, z, u) != std::conj(kernel_eval(b, u, z))) ++mismatches;
    }
  }
  return make_case("kernel.hermitian_symmetry", mismatches == 0, mismatches, "pairs with K(z,w) != conj K(w,z)");
}

BatteryCase diagonal_positivity(std::uint64_t seed) {
  SeededRng rng(seed);
  int bad = 0;
  for (const auto& [w, radius] : certified_kernels()) {
    const KernelBasis b = compute_deltas(w, 40);
    for (int i = 0; i < 50; ++i) {
      const cplx z = rng.in_disc(radius);
      const cplx k = kernel_eval(b, z, z);
      if (k.imag() != 0.0 || !(k.real() > 0.0)) ++bad;
    }
  }
  return make_case("kernel.diagonal_positivity", bad == 0, bad, "points with K(z,z) not real positive");
}

BatteryCase classical_closed_form(std::uint64_t seed) {
  SeededRng rng(seed);
  const KernelBasis b = compute_deltas(WeightProfile::classical_gaussian(), 40);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx z = rng.in_disc(2.0), u = rng.in_disc(2.0);
    worst = std::max(worst, std::abs(kernel_eval(b, z, u) - std::exp(z * std::conj(u)) / kPi));
  }
  return make_case("kernel.classical_closed_form", worst <= 1e-10, worst, "max |K - e^{z conj w}/pi|, N = 40");
}

BatteryCase reproducing_property(std::uint64_t, const QuadratureConfig& quad) {
  const KernelBasis b = compute_deltas(WeightProfile::classical_gaussian(), 40);
  double worst = 0.0;
  bool converged = true;
  for (int j = 0; j <= 8; ++j) {
    const EntireFunction f = EntireFunction::monomial(j);
    for (double r : {2.0 / 3.0, 4.0 / 3.0, 2.0}) {
      for (int a = 0; a < 8; ++a) {
        const ReproduceResult res = reproduce_check(b, f, std::polar(r, 2.0 * kPi * a / 8.0), quad);
        converged = converged && res.converged;
        worst = std::max(worst, res.rel_err);
      }
    }
  }
  return make_case("kernel.reproducing_property", converged && worst <= 1e-6, worst,
                   "max relative error, z^j for j <= 8 on a 3 x 8 polar grid");
}

BatteryCase moment_log_convexity(std::uint64_t) {
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& w : class_one_profiles()) {
    const KernelBasis b = compute_deltas(w, 26);
    for (int n = 0; n + 2 <= 26; ++n) {
      const double d0 = b.log_delta_sq[static_cast<std::size_t>(n + 1)] - b.log_delta_sq[static_cast<std::size_t>(n)];
      const double d1 = b.log_delta_sq[static_cast<std::size_t>(n + 2)] - b.log_delta_sq[static_cast<std::size_t>(n + 1)];
      worst = std::min(worst, d1 - d0);
      ok = ok && d1 > d0;
    }
  }
  return make_case("kernel.moment_log_convexity", ok, worst,
                   "min second difference of log delta_n^2, n <= 25");
}

// ---- ode ------------------------------------------------------------------

const std::vector<double> kOracleRadii = {1.0, 2.5, 5.0};
const std::vector<double> kOracleThetas = {0.0, kPi / 3.0, 3.0 * kPi / 4.0};

std::vector<LDEProblem> envelope_family(std::uint64_t seed) {
  auto ps = seeded_ode_family(seed, 10);
  ps.push_back(second_order_homogeneous(EntireFunction::constant(1.0), 1.0, 0.0));
  ps.push_back(second_order_homogeneous(EntireFunction::monomial(1), 1.0, 0.0));
  return ps;
}

BatteryCase oracle_agreement(std::uint64_t seed) {
  const OracleAgreement a = ode_oracle_agreement(seeded_ode_family(seed, 10), 200, kOracleRadii, kOracleThetas, 1e-10);
  return make_case("ode.oracle_agreement", a.failures == 0 && a.worst_rel_err <= 1e-8, a.worst_rel_err,
                   std::to_string(a.comparisons) + " comparisons, worst at " + a.worst_case);
}

BatteryCase envelope_case(std::uint64_t seed) {
  const EnvelopeCheck e = envelope_domination(envelope_family(seed), kOracleThetas, 0.5, 10.0, 200);
  return make_case("ode.envelope_domination", e.violations == 0, e.worst_ratio,
                   std::to_string(e.samples) + " samples, " + std::to_string(e.violations) +
                       " violations, max |f|/B at " + e.worst_case);
}

BatteryCase linearity(std::uint64_t seed) {
  // Gap measured in the weighted l1 norm sum |a_n| R^n, the scale at which
  // rounding enters the recurrence.
  SeededRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  constexpr int N = 60;
  constexpr double R = 2.0;
  double worst = 0.0;
  for (LDEProblem p : seeded_ode_family(seed, 10)) {
    p.forcing = EntireFunction();
    LDEProblem u = p, v = p, w = p;
    for (int j = 0; j < p.k; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      u.initial[uj] = rng.in_disc(1.0);
      v.initial[uj] = rng.in_disc(1.0);
      w.initial[uj] = u.initial[uj] + v.initial[uj];
    }
    const auto a = taylor_solution_coefficients(u, N);
    const auto b = taylor_solution_coefficients(v, N);
    const auto c = taylor_solution_coefficients(w, N);
    double gap = 0.0, scale = 0.0, rn = 1.0;
    for (int n = 0; n <= N; ++n, rn *= R) {
      const auto un = static_cast<std::size_t>(n);
      gap = std::max(gap, std::abs(c[un] - a[un] - b[un]) * rn);
      scale += (std::abs(a[un]) + std::abs(b[un])) * rn;
    }
    worst = std::max(worst, gap / scale);
  }
  return make_case("ode.linearity", worst <= 1e-13, worst,
                   "max coefficient gap relative to sum |a_n| 2^n, N = 60");
}

BatteryCase residual(std::uint64_t seed) {
  constexpr int N = 200;
  constexpr double kFullPrecision = std::numeric_limits<double>::min() / kEps;
  double worst = 0.0;
  for (const LDEProblem& p : seeded_ode_family(seed, 10)) {
    const auto a = taylor_solution_coefficients(p, N);
    const auto F = taylor_coefficients(p.forcing, N);
    std::vector<std::vector<cplx>> terms;  // (A_j f^(j))_n for each j
    for (int j = 0; j < p.k; ++j) {
      std::vector<cplx> dj(static_cast<std::size_t>(N - j) + 1);
      for (int n = 0; n + j <= N; ++n) {
        double fall = 1.0;
        for (int t = 1; t <= j; ++t) fall *= n + t;
        dj[static_cast<std::size_t>(n)] = fall * a[static_cast<std::size_t>(n + j)];
      }
      terms.push_back(series_multiply(taylor_coefficients(p.A[static_cast<std::size_t>(j)], N), dj, N - p.k));
    }
    for (int n = 0; n <= N - p.k; ++n) {
      double fall = 1.0;
      for (int t = 1; t <= p.k; ++t) fall *= n + t;
      const cplx lead = fall * a[static_cast<std::size_t>(n + p.k)];
      cplx res = lead - F[static_cast<std::size_t>(n)];
      double dominant = std::max(std::abs(lead), std::abs(F[static_cast<std::size_t>(n)]));
      for (const auto& t : terms) {
        res += t[static_cast<std::size_t>(n)];
        dominant = std::max(dominant, std::abs(t[static_cast<std::size_t>(n)]));
      }
      // Subnormal coefficients carry too few bits for a relative comparison.
      if (dominant > kFullPrecision) worst = std::max(worst, std::abs(res) / dominant);
    }
  }
  return make_case("ode.residual", worst <= 1e-12, worst,
                   "max |residual_n| / dominant term, n <= N - k, terms above the subnormal range");
}

// ---- conditions -----------------------------------------------------------

BatteryCase degree_gate(std::uint64_t seed) {
  SeededRng rng(seed);
  int wrong = 0, cases = 0;
  for (int d = 0; d <= 4; ++d) {
    for (int s = 0; s <= 4; ++s) {
      for (int i = 0; i < 20; ++i, ++cases) {
        const SupRatio r = sup_ratio(random_polynomial(rng, d), s);
        if (std::isinf(r.value) != (d > s)) ++wrong;
      }
    }
  }
  return make_case("conditions.sup_ratio_degree_gate", wrong == 0, wrong,
                   std::to_string(cases) + " cases, d, s <= 4");
}

CheckConfig light_check_config(const QuadratureConfig& quad) {
  CheckConfig cfg;
  cfg.quad = quad;
  return cfg;
}

BatteryCase sobolev_degeneracy(std::uint64_t seed, const QuadratureConfig& quad) {
  // Membership verdicts only need a coarse grid; solutions are probed where
  // the hypothesis holds, which is where the implication is at stake.
  CheckConfig cfg = light_check_config(quad.scaled(0.5));
  cfg.probe_unsatisfied = false;
  const auto cases = sobolev_degeneracy_cases(seed, 50, cfg);
  int satisfied = 0, violations = 0;
  for (const auto& c : cases) {
    if (!c.hypothesis_satisfied) continue;
    ++satisfied;
    if (!c.degenerate || !c.consistent) ++violations;
  }
  return make_case("conditions.sobolev_degeneracy", violations == 0, violations,
                   std::to_string(satisfied) + " of 50 lists satisfy the hypothesis");
}

BatteryCase functional_linearity(std::uint64_t seed, const QuadratureConfig& quad) {
  SeededRng rng(seed);
  const WeightProfile w = WeightProfile::power(3.0);
  const KernelBasis b = compute_deltas(w, 24);
  const CheckConfig cfg = light_check_config(quad);
  const EntireFunction A = EntireFunction::polynomial({0.3, 0.2});
  double worst = 0.0;
  using Fn = KernelFunctional (*)(const WeightProfile&, const EntireFunction&, const KernelBasis&, const CheckConfig&);
  for (Fn fn : {&xk_functional, &yk_functional, &zk_functional}) {
    const double c = rng.uniform(0.1, 5.0);
    const double base = fn(w, A, b, cfg).value;
    const double scaled = fn(w, EntireFunction::scaled(c, A), b, cfg).value;
    worst = std::max(worst, std::abs(scaled - c * base) / (c * base));
  }
  return make_case("conditions.functional_linearity", worst <= 1e-12, worst,
                   "max relative gap of F(cA) against c F(A), phi = r^3");
}

// The seeded Fock-Sobolev lists are covered by conditions.sobolev_degeneracy.
BatteryCase implication_consistency(std::uint64_t, const QuadratureConfig& quad) {
  using EF = EntireFunction;
  const CheckConfig cfg = light_check_config(quad);
  std::vector<ConditionReport> reports;

  LDEProblem p1;
  p1.k = 2;
  p1.A = {EF::constant(0.1), EF()};
  p1.forcing = EF::constant(1.0);
  p1.initial = {1.0, 0.0};
  reports.push_back(check_fock_solutions(p1, 2.0, cfg));
  reports.push_back(check_fock_sobolev_solutions(p1, 2.0, cfg));

  LDEProblem p3;
  p3.k = 2;
  p3.A = {EF::polynomial({0.0, 0.25}), EF::polynomial({0.0, 0.125})};
  p3.forcing = EF::monomial(1);
  p3.initial = {1.0, 0.0};
  reports.push_back(check_radial_bound_solutions(p3, WeightProfile::power(4.0), 2.0, 1.0, cfg));

  LDEProblem p4;
  p4.k = 1;
  p4.A = {EF::constant(2.0)};
  p4.initial = {0.0};
  reports.push_back(check_forcing_membership(p4, 2.0, EF::monomial(2), cfg));

  LDEProblem p5;
  p5.k = 2;
  p5.A = {EF::constant(1.0), EF()};
  p5.initial = {1.0, 1.0};
  reports.push_back(check_double_exponential_coefficient(p5, 2.0, 0.0, EF::exp_scaled(1.0), cfg));

  const WeightProfile w3 = WeightProfile::power(3.0);
  const KernelBasis b3 = compute_deltas(w3, 24);
  for (auto id : {TheoremId::T1_6, TheoremId::T1_7, TheoremId::T1_8})
    reports.push_back(check_kernel_theorem(id, w3, EF::constant(0.01), b3, cfg));

  int satisfied = 0, inconsistent = 0;
  std::string detail;
  for (const auto& r : reports) {
    satisfied += r.hypothesis_satisfied ? 1 : 0;
    if (!r.consistent) {
      ++inconsistent;
      detail += " inconsistent:" + to_string(r.theorem);
    }
  }
  return make_case("conditions.implication_consistency", inconsistent == 0, inconsistent,
                   std::to_string(satisfied) + " of " + std::to_string(reports.size()) +
                       " hypotheses satisfied" + detail);
}

using CaseFn = BatteryCase (*)(std::uint64_t, const QuadratureConfig&);

template <BatteryCase (*F)(std::uint64_t)>
BatteryCase ignore_quad(std::uint64_t seed, const QuadratureConfig&) {
  return F(seed);
}

const std::vector<std::pair<std::string, CaseFn>>& registry() {
  static const std::vector<std::pair<std::string, CaseFn>> r = {
      {"weights.tau_laplacian_identity", &ignore_quad<tau_laplacian_identity>},
      {"weights.power_classification", &ignore_quad<power_classification>},
      {"weights.finite_difference_derivatives", &ignore_quad<finite_difference_derivatives>},
      {"entire.derivative_of_primitive", &ignore_quad<derivative_of_primitive>},
      {"entire.max_modulus_resolution", &ignore_quad<max_modulus_resolution>},
      {"entire.cauchy_associativity", &ignore_quad<cauchy_associativity>},
      {"quadrature.homogeneity", &homogeneity},
      {"quadrature.truncation_refinement", &truncation_refinement},
      {"quadrature.tail_dominance", &tail_dominance},
      {"quadrature.sup_norm_of_one", &sup_norm_of_one},
      {"kernel.hermitian_symmetry", &ignore_quad<hermitian_symmetry>},
      {"kernel.diagonal_positivity", &ignore_quad<diagonal_positivity>},
      {"kernel.classical_closed_form", &ignore_quad<classical_closed_form>},
      {"kernel.reproducing_property", &reproducing_property},
      {"kernel.moment_log_convexity", &ignore_quad<moment_log_convexity>},
      {"ode.oracle_agreement", &ignore_quad<oracle_agreement>},
      {"ode.envelope_domination", &ignore_quad<envelope_case>},
      {"ode.linearity", &ignore_quad<linearity>},
      {"ode.residual", &ignore_quad<residual>},
      {"conditions.sup_ratio_degree_gate", &ignore_quad<degree_gate>},
      {"conditions.sobolev_degeneracy", &sobolev_degeneracy},
      {"conditions.functional_linearity", &functional_linearity},
      {"conditions.implication_consistency", &implication_consistency},
  };
  return r;
}

}  // namespace

cplx SeededRng::in_disc(double radius) {
  for (;;) {
    const cplx c(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    if (std::abs(c) <= 1.0) return radius * c;
  }
}

cplx SeededRng::unit_coefficient() { return in_disc(1.0); }

EntireFunction random_polynomial(SeededRng& rng, int degree) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = rng.unit_coefficient();
  while (std::abs(c.back()) < 0.05) c.back() = rng.unit_coefficient();
  return EntireFunction::polynomial(std::move(c));
}

namespace {

std::vector<LDEProblem> ode_family(std::uint64_t seed, int count, int max_degree, bool cap) {
  SeededRng rng(seed);
  std::vector<LDEProblem> out;
  for (int i = 0; i < count; ++i) {
    LDEProblem p;
    p.k = rng.integer(1, 3);
    for (int j = 0; j < p.k; ++j) {
      const int hi = cap ? std::min(max_degree, p.k - j) : max_degree;
      p.A.push_back(random_polynomial(rng, rng.integer(0, hi)));
    }
    if (i % 2 == 1) p.forcing = random_polynomial(rng, rng.integer(0, 2));
    for (int j = 0; j < p.k; ++j) p.initial.push_back(rng.unit_coefficient());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<LDEProblem> seeded_ode_family(std::uint64_t seed, int count, int max_degree) {
  return ode_family(seed, count, max_degree, true);
}

std::vector<LDEProblem> seeded_ode_family_unrestricted(std::uint64_t seed, int count, int max_degree) {
  return ode_family(seed, count, max_degree, false);
}

OracleAgreement ode_oracle_agreement(const std::vector<LDEProblem>& problems, int N,
                                     const std::vector<double>& radii,
                                     const std::vector<double>& thetas, double tol) {
  OracleAgreement out;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& p = problems[i];
    EntireFunction f;
    try {
      f = taylor_solve(p, N);
    } catch (const std::exception&) {
      out.failures += static_cast<int>(thetas.size() * radii.size());
      continue;
    }
    for (double th : thetas) {
      const RayTrace tr = ray_integrate(p, th, radii, tol);
      for (std::size_t r = 0; r < radii.size(); ++r) {
        if (tr.blowup && radii[r] > tr.last_radius) {
          ++out.failures;
          continue;
        }
        cplx series;
        try {
          series = f(std::polar(radii[r], th));
        } catch (const std::domain_error&) {
          ++out.failures;
          continue;
        }
        ++out.comparisons;
        const double e = std::abs(series - tr.values[r][0]) / std::abs(series);
        if (e > out.worst_rel_err || std::isnan(e)) {
          out.worst_rel_err = std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
          out.worst_case = "problem " + std::to_string(i) + fmt(" theta %.4f", th) + fmt(" r %.2f", radii[r]);
        }
      }
    }
  }
  return out;
}

EnvelopeCheck envelope_domination(const std::vector<LDEProblem>& problems,
                                  const std::vector<double>& thetas, double R0, double r_max,
                                  int count) {
  EnvelopeCheck out;
  std::vector<double> radii;
  for (double r : uniform_radii(r_max, count))
    if (r > R0) radii.push_back(r);
  for (std::size_t i = 0; i < problems.size(); ++i) {
    for (double th : thetas) {
      const GrowthEnvelope env = growth_envelope(problems[i], th, radii, R0);
      const RayTrace tr = ray_integrate(problems[i], th, radii, 1e-10);
      for (std::size_t r = 0; r < radii.size(); ++r) {
        if (radii[r] <= env.R0) continue;
        if (tr.blowup && radii[r] > tr.last_radius) break;
        ++out.samples;
        const double f = std::abs(tr.values[r][0]);
        if (!(env.bound[r] >= f)) ++out.violations;
        const double ratio = f / env.bound[r];
        if (ratio > out.worst_ratio) {
          out.worst_ratio = ratio;
          out.worst_case = "problem " + std::to_string(i) + fmt(" theta %.4f", th) + fmt(" r %.3f", radii[r]);
        }
      }
    }
  }
  return out;
}

std::vector<DegeneracyCase> sobolev_degeneracy_cases(std::uint64_t seed, int count,
                                                     const CheckConfig& cfg) {
  SeededRng rng(seed);
  std::vector<DegeneracyCase> out;
  for (int i = 0; i < count; ++i) {
    LDEProblem p;
    p.k = rng.integer(1, 3);
    const int style = i % 5 == 0 ? 0 : 1 + i % 2;  // 0: degenerate, 1: small random, 2: large random
    for (int j = 0; j < p.k; ++j) {
      if (style == 0) {
        p.A.push_back(j == 0 ? EntireFunction::constant(rng.uniform(-0.2, 0.2)) : EntireFunction());
      } else {
        const double scale = style == 1 ? 0.05 : 1.0;
        p.A.push_back(EntireFunction::scaled(scale, random_polynomial(rng, rng.integer(0, 2))));
      }
    }
    for (int j = 0; j < p.k; ++j) p.initial.push_back(rng.unit_coefficient());
    const ConditionReport r = check_fock_sobolev_solutions(p, 2.0, cfg);
    bool degenerate = is_constant(p.A[0]);
    for (int j = 1; j < p.k; ++j) degenerate = degenerate && is_zero(p.A[static_cast<std::size_t>(j)]);
    out.push_back({std::move(p), r.hypothesis_satisfied, degenerate, r.consistent});
  }
  return out;
}

bool BatteryReport::all_passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const BatteryCase& c) { return c.passed; });
}

std::vector<std::string> battery_case_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

BatteryCase run_battery_case(const std::string& name, std::uint64_t seed, const QuadratureConfig& quad) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    try {
      return fn(seed, quad);
    } catch (const std::exception& e) {
      return make_case(name, false, std::numeric_limits<double>::quiet_NaN(), std::string("threw: ") + e.what());
    }
  }
  throw std::invalid_argument("unknown battery case '" + name + "'");
}

BatteryReport run_battery(std::uint64_t seed, const QuadratureConfig& quad) {
  BatteryReport rep;
  rep.seed = seed;
  for (const auto& name : battery_case_names()) rep.cases.push_back(run_battery_case(name, seed, quad));
  return rep;
}

}  // namespace fockde
