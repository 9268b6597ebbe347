// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: fockde_acceptance [scratch_dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fockde/battery.hpp"
#include "fockde/cli.hpp"
#include "fockde/conditions.hpp"
#include "fockde/io.hpp"

using namespace fockde;
using EF = EntireFunction;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSeed = 20241015;

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0.0 && secs >= time_limit) {
    o.passed = false;
    o.detail += "; over the time limit";
  }
  if (!o.passed) ++failures;
  std::printf("%s [%2d] %-44s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

void info(const std::string& title, const std::string& detail) {
  std::printf("INFO      %-44s           %s\n", title.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

LDEProblem radial_bound_problem() {
  LDEProblem p;
  p.k = 2;
  p.A = {EF::polynomial({0.0, 0.25}), EF::polynomial({0.0, 0.125})};
  p.forcing = EF::monomial(1);
  p.initial = {1.0, 0.0};
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path scratch =
      argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::temp_directory_path() / "fockde_acceptance";
  std::filesystem::create_directories(scratch);
  const QuadratureConfig quad;

  criterion(1, "classical moments equal pi n!", 5.0, [] {
    const KernelBasis b = compute_deltas(WeightProfile::classical_gaussian(), 30);
    double worst = 0.0;
    for (int n = 0; n <= 30; ++n) {
      const double ref = std::log(pi) + std::lgamma(n + 1.0);
      worst = std::max(worst, std::abs(std::expm1(b.log_delta_sq[static_cast<std::size_t>(n)] - ref)));
    }
    return Outcome{worst <= 1e-9, "max relative error " + fmt("%.3e", worst) + ", n <= 30"};
  });

  criterion(2, "reproducing property, classical N = 40", 60.0, [&] {
    const KernelBasis b = compute_deltas(WeightProfile::classical_gaussian(), 40);
    double worst = 0.0;
    bool converged = true;
    for (int j = 0; j <= 8; ++j) {
      for (double r : {2.0 / 3.0, 4.0 / 3.0, 2.0}) {
        for (int a = 0; a < 8; ++a) {
          const auto res = reproduce_check(b, EF::monomial(j), std::polar(r, 2.0 * pi * a / 8.0), quad);
          converged = converged && res.converged;
          worst = std::max(worst, res.rel_err);
        }
      }
    }
    return Outcome{converged && worst <= 1e-6, "max relative error " + fmt("%.3e", worst) + " over 9 x 24 cases"};
  });

  criterion(3, "classical kernel closed form", 0.0, [] {
    const KernelBasis b = compute_deltas(WeightProfile::classical_gaussian(), 40);
    SeededRng rng(kSeed);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      const cplx z = rng.in_disc(2.0), w = rng.in_disc(2.0);
      worst = std::max(worst, std::abs(kernel_eval(b, z, w) - std::exp(z * std::conj(w)) / pi));
    }
    return Outcome{worst <= 1e-10, "max |K - e^{z conj w}/pi| " + fmt("%.3e", worst) + " over 500 pairs"};
  });

  criterion(4, "derivative pairing identity, phi = r^3", 0.0, [&] {
    const KernelBasis b = compute_deltas(WeightProfile::power(3), 12);
    double off = 0.0;
    std::vector<double> ratios;
    for (int a = 0; a <= 4; ++a) {
      for (int c = 0; c <= 4; ++c) {
        const auto r = inner_product_identity_check(b, EF::monomial(a), EF::monomial(c), quad);
        if (a != c) {
          off = std::max({off, std::abs(r.lhs), std::abs(r.rhs)});
        } else {
          ratios.push_back(std::abs(r.lhs) / std::abs(r.rhs));
        }
      }
    }
    double lo = inf, hi = 0.0;
    bool finite = true;
    std::string list;
    for (double x : ratios) {
      finite = finite && std::isfinite(x) && x > 0.0;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      list += (list.empty() ? "" : " ") + fmt("%.4g", x);
    }
    const bool ok = off <= 1e-8 && finite && hi <= 10.0 * lo;
    return Outcome{ok, "off-diagonal max " + fmt("%.2e", off) + "; diagonal lhs/rhs " + list + " (spread " +
                           fmt("%.3g", hi / lo) + ")"};
  });

  criterion(5, "Taylor vs ray integration, 10 problems", 30.0, [] {
    const auto family = seeded_ode_family(kSeed, 10);
    const auto res = ode_oracle_agreement(family, 200, {1.0, 2.5, 5.0}, {0.0, pi / 3.0, 3.0 * pi / 4.0}, 1e-10);
    return Outcome{res.failures == 0 && res.comparisons == 90 && res.worst_rel_err <= 1e-8,
                   std::to_string(res.comparisons) + " comparisons, worst relative gap " +
                       fmt("%.3e", res.worst_rel_err) + " (" + res.worst_case + ")"};
  });
  {
    const auto res = ode_oracle_agreement(seeded_ode_family_unrestricted(kSeed, 10), 200, {1.0, 2.5, 5.0},
                                          {0.0, pi / 3.0, 3.0 * pi / 4.0}, 1e-10);
    info("oracle agreement without the degree cap",
         std::to_string(res.comparisons) + " comparisons, " + std::to_string(res.failures) +
             " uncertified, worst relative gap " + fmt("%.3e", res.worst_rel_err));
  }

  criterion(6, "growth envelope dominates |f| on (R0, 10]", 0.0, [] {
    auto family = seeded_ode_family(kSeed, 10);
    family.push_back(second_order_homogeneous(EF::constant(1.0), 1.0, 0.0));
    family.push_back(second_order_homogeneous(EF::monomial(1), 1.0, 0.0));
    const auto res = envelope_domination(family, {0.0, pi / 3.0, 3.0 * pi / 4.0}, 0.5, 10.0, 200);
    return Outcome{res.samples > 0 && res.violations == 0,
                   std::to_string(res.samples) + " samples, " + std::to_string(res.violations) +
                       " violations, max |f|/B " + fmt("%.3f", res.worst_ratio)};
  });
  {
    auto family = seeded_ode_family_unrestricted(kSeed, 10);
    const auto res = envelope_domination(family, {0.0, pi / 3.0, 3.0 * pi / 4.0}, 0.5, 10.0, 200);
    info("envelope without the degree cap",
         std::to_string(res.samples) + " samples, " + std::to_string(res.violations) + " violations");
  }

  criterion(7, "radial bound theorem end to end, phi = r^4", 0.0, [&] {
    CheckConfig cfg;
    const auto w = WeightProfile::power(4);
    const LDEProblem p = radial_bound_problem();
    const auto rep = check_radial_bound_solutions(p, w, 2.0, 1.0, cfg);
    const double r0 = rep.get("r0").value_or(inf);
    SpaceSpec space;
    space.weight = w;
    space.q = 1.0;
    QuadratureConfig to8 = quad;
    to8.r_max = 8.0;
    double worst_tail = 0.0;
    bool converged = true;
    const std::vector<cplx> data[] = {{1.0, 0.0}, {0.0, 1.0}};
    for (const auto& d : data) {
      LDEProblem h = p;
      h.forcing = EF();
      h.initial = d;
      const EF f = taylor_solve(h, cfg.taylor_order);
      const auto full = weighted_norm(f, space, quad);
      const auto cut = weighted_norm(f, space, to8);
      converged = converged && full.converged;
      worst_tail = std::max(worst_tail, (full.integral - cut.integral) / full.integral);
    }
    const bool ok = rep.hypothesis_satisfied && r0 <= 1.0 && converged && worst_tail < 1e-6 && rep.consistent;
    return Outcome{ok, "hypothesis " + std::string(rep.hypothesis_satisfied ? "true" : "false") + ", r0 " +
                           fmt("%.3g", r0) + ", mass beyond r = 8 " + fmt("%.2e", worst_tail) + ", consistent " +
                           (rep.consistent ? "true" : "false")};
  });

  criterion(8, "degree gates", 0.0, [&] {
    SeededRng rng(kSeed);
    int mismatches = 0;
    for (int t = 0; t < 20; ++t) {
      const int d = rng.integer(0, 4), s = rng.integer(0, 4);
      const auto r = sup_ratio(random_polynomial(rng, d), s);
      if ((r.value == inf) != (d > s)) ++mismatches;
    }
    CheckConfig cfg;
    cfg.quad = quad.scaled(0.5);
    cfg.probe_unsatisfied = false;
    const auto cases = sobolev_degeneracy_cases(kSeed, 50, cfg);
    int satisfied = 0, violations = 0;
    for (const auto& c : cases) {
      if (!c.hypothesis_satisfied) continue;
      ++satisfied;
      if (!c.degenerate) ++violations;
    }
    return Outcome{mismatches == 0 && violations == 0 && cases.size() == 50,
                   "sup ratio mismatches " + std::to_string(mismatches) + "/20; " + std::to_string(satisfied) +
                       " of 50 coefficient lists satisfy the hypothesis, " + std::to_string(violations) +
                       " non-degenerate"};
  });

  criterion(9, "kernel functionals and the bisected epsilon", 600.0, [&] {
    CheckConfig cfg;
    const auto w = WeightProfile::power(3);
    const KernelBasis b = compute_deltas(w, 24);
    const bool zeros = xk_functional(w, EF(), b, cfg).value == 0.0 && yk_functional(w, EF(), b, cfg).value == 0.0 &&
                       zk_functional(w, EF(), b, cfg).value == 0.0;

    const EF A = EF::polynomial({0.3, 0.2});
    double lin = 0.0;
    const double X = xk_functional(w, A, b, cfg).value, Y = yk_functional(w, A, b, cfg).value,
                 Z = zk_functional(w, A, b, cfg).value;
    for (double c : {0.37, 2.9}) {
      const EF cA = cplx(c) * A;
      auto gap = [&](double scaled, double base) {
        return base == 0.0 ? std::abs(scaled) : std::abs(scaled - c * base) / (c * base);
      };
      lin = std::max({lin, gap(xk_functional(w, cA, b, cfg).value, X), gap(yk_functional(w, cA, b, cfg).value, Y),
                      gap(zk_functional(w, cA, b, cfg).value, Z)});
    }

    // largest eps with X_K(eps) < 1 on [0, 64], by bisection
    double lo = 0.0, hi = 64.0;
    if (xk_functional(w, EF::constant(hi), b, cfg).value < 1.0) return Outcome{false, "X_K(64) < 1: no bracket"};
    for (int it = 0; it < 16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (xk_functional(w, EF::constant(mid), b, cfg).value < 1.0 ? lo : hi) = mid;
    }
    const double eps = lo;
    const auto rep = check_kernel_theorem(TheoremId::T1_6, w, EF::constant(eps), b, cfg);

    // weighted |f'| decays beyond the probe's peak radius
    bool decaying = !rep.probes.empty();
    for (int j = 0; j < 2 && decaying; ++j) {
      const EF f = taylor_solve(second_order_homogeneous(EF::constant(eps), j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0),
                                cfg.taylor_order);
      const EF fp = differentiate(f);
      const ProbeResult& pr = rep.probes[static_cast<std::size_t>(j)];
      decaying = decaying && pr.in_space && std::isfinite(pr.value);
      double prev = inf;
      for (int s = 1; s <= 4; ++s) {
        const double r = pr.peak_radius + 0.5 * s;
        const double v = std::exp(std::log(max_modulus(fp, r)) - w.phi(r));
        decaying = decaying && v < prev && v <= pr.value;
        prev = v;
      }
    }
    const bool ok = zeros && lin <= 1e-12 && rep.hypothesis_satisfied && decaying && rep.consistent;
    return Outcome{ok, std::string("zero at A = 0: ") + (zeros ? "yes" : "no") + "; scaling gap " +
                           fmt("%.2e", lin) + "; eps " + fmt("%.6g", eps) + " with X_K " +
                           fmt("%.6g", rep.get("functional").value_or(inf)) + "; probes decaying " +
                           (decaying ? "yes" : "no") + "; consistent " + (rep.consistent ? "true" : "false")};
  });

  criterion(10, "byte-identical reruns", 0.0, [&] {
    const std::string dir = std::string(FOCKDE_DATA_DIR) + "/";
    const std::string csv = (scratch / "determinism_solve.csv").string();
    const std::vector<std::vector<std::string>> manifests = {
        {"norm", "--function", dir + "z.json"},
        {"norm", "--function", dir + "z.json", "--weight", dir + "power3.json", "--p", "inf"},
        {"weights", "check", "--weight", dir + "power3.json"},
        {"kernel", "table", "--weight", dir + "power3.json"},
        {"kernel", "reproduce", "--weight", dir + "classical.json", "--function", dir + "z_squared.json", "--at", "1,1"},
        {"envelope", "--problem", dir + "airy.json"},
        {"check", "--theorem", "T1.3", "--problem", dir + "radial_bound.json", "--weight", dir + "power4.json", "--q", "1"},
        {"--seed", "7", "battery", "--case", "conditions.sup_ratio_degree_gate", "--case", "ode.envelope_domination"},
        {"--out", csv, "solve", "--problem", dir + "cosine.json", "--r-max", "3.14159"},
    };
    int differing = 0;
    for (const auto& args : manifests) {
      std::string first;
      for (int rep = 0; rep < 2; ++rep) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        std::string text = std::to_string(code) + "\n" + out.str();
        if (args.front() == "--out") text += read_text_file(csv) + read_text_file(csv + ".series.json");
        if (rep == 0) first = text;
        else if (text != first) ++differing;
      }
    }
    return Outcome{differing == 0, std::to_string(manifests.size()) + " manifests run twice, " +
                                       std::to_string(differing) + " differing"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
