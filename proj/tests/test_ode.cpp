#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <numbers>

#include "fockde/battery.hpp"
#include "fockde/ode.hpp"

using namespace fockde;
using EF = EntireFunction;

namespace {

constexpr double pi = std::numbers::pi;

LDEProblem first_order(EF a0, EF forcing, cplx f0) {
  LDEProblem p;
  p.k = 1;
  p.A = {std::move(a0)};
  p.forcing = std::move(forcing);
  p.initial = {f0};
  return p;
}

}  // namespace

TEST_SUITE("ode") {

TEST_CASE("Taylor coefficients of f'' + f = 0 are the cosine series") {
  const auto a = taylor_solution_coefficients(second_order_homogeneous(EF::constant(1.0), 1.0, 0.0), 30);
  double fact = 1.0;
  for (int n = 0; n <= 30; ++n) {
    if (n > 0) fact *= n;
    const cplx c = a[static_cast<std::size_t>(n)];
    if (n % 2) {
      CHECK(c == cplx(0.0));
    } else {
      const double ref = ((n / 2) % 2 ? -1.0 : 1.0) / fact;
      CHECK(std::abs(c - ref) <= 1e-15 * std::abs(ref));
    }
  }
}

TEST_CASE("Taylor coefficients of f'' + z f = 0") {
  const auto a = taylor_solution_coefficients(second_order_homogeneous(EF::monomial(1), 1.0, 0.0), 12);
  CHECK(a[2] == cplx(0.0));
  CHECK(std::abs(a[3] + 1.0 / 6.0) < 1e-17);
  CHECK(a[4] == cplx(0.0));
  CHECK(a[5] == cplx(0.0));
  CHECK(std::abs(a[6] - 1.0 / 180.0) < 1e-18);
}

TEST_CASE("f' = 1 gives f = z") {
  const auto a = taylor_solution_coefficients(first_order(EF(), EF::constant(1.0), 0.0), 8);
  CHECK(a[0] == cplx(0.0));
  CHECK(a[1] == cplx(1.0));
  for (std::size_t n = 2; n < a.size(); ++n) CHECK(a[n] == cplx(0.0));
}

TEST_CASE("Taylor errors") {
  CHECK_THROWS_AS(taylor_solution_coefficients(second_order_homogeneous(EF::constant(1.0), 1.0, 0.0), 1),
                  std::invalid_argument);
  LDEProblem bad = second_order_homogeneous(EF::constant(1.0), 1.0, 0.0);
  bad.initial = {1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  const auto big = second_order_homogeneous(EF::constant(-1e300), 1.0, 0.0);
  CHECK_THROWS_WITH_AS(taylor_solution_coefficients(big, 40), doctest::Contains("index"), std::overflow_error);
}

TEST_CASE("ray integration examples") {
  const auto cosine = second_order_homogeneous(EF::constant(1.0), 1.0, 0.0);
  const auto t = ray_integrate(cosine, 0.0, pi, 1e-10);
  CHECK(std::abs(t.values.back()[0] + 1.0) <= 1e-8);
  const auto ex = ray_integrate(first_order(EF::constant(-1.0), EF(), 1.0), pi / 2.0, pi, 1e-10);
  CHECK(std::abs(ex.values.back()[0] + 1.0) <= 1e-8);
  const auto ch = ray_integrate(cosine, pi / 2.0, 5.0, 1e-10);
  CHECK(std::abs(std::abs(ch.values.back()[0]) - std::cosh(5.0)) <= 1e-7 * std::cosh(5.0));
}

TEST_CASE("ray trace lands on the requested radii") {
  const auto radii = uniform_radii(4.0, 16);
  CHECK(radii.back() == 4.0);
  const auto t = ray_integrate(second_order_homogeneous(EF::constant(1.0), 1.0, 0.0), 0.3, radii, 1e-10);
  REQUIRE(t.radii.size() == radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(t.radii[i] == radii[i]);
    if (i) CHECK(t.radii[i] > t.radii[i - 1]);
    CHECK(std::isfinite(std::abs(t.values[i][0])));
  }
  const auto g = geometric_radii(0.5, 1.5, 5);
  CHECK(g[4] == doctest::Approx(0.5 * std::pow(1.5, 4)));
}

TEST_CASE("blowup stops the trace") {
  // f' = z^60 f grows like exp(z^61 / 61)
  const auto p = first_order(-1.0 * EF::monomial(60), EF(), 1.0);
  const auto t = ray_integrate(p, 0.0, 10.0, 1e-10);
  CHECK(t.blowup);
  CHECK(t.last_radius < 10.0);
}

TEST_CASE("envelope of f'' + f = 0 dominates the cosine") {
  const auto cosine = second_order_homogeneous(EF::constant(1.0), 1.0, 0.0);
  std::vector<double> radii;
  for (double r : uniform_radii(20.0, 400))
    if (r > 0.5) radii.push_back(r);
  const auto env = growth_envelope(cosine, 0.0, radii, 0.5);
  CHECK(env.k_c == 1);
  CHECK(env.delta == 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) CHECK(env.bound[i] >= std::abs(std::cos(radii[i])));
  // B(r) = C e^{r}: the ratio of consecutive bounds is e^{dr}
  CHECK(env.bound.back() / env.bound.front() == doctest::Approx(std::exp(radii.back() - radii.front())).epsilon(1e-6));
}

TEST_CASE("envelope without forcing has unit forcing factor") {
  const auto p = second_order_homogeneous(EF::constant(1.0), 0.0, 1.0);
  const auto env = growth_envelope(p, 0.0, uniform_radii(3.0, 10), 0.5);
  CHECK(env.delta == 0.0);
  auto forced = p;
  forced.forcing = EF::constant(2.0);
  CHECK(growth_envelope(forced, 0.0, uniform_radii(3.0, 10), 0.5).delta == 1.0);
}

TEST_CASE("Airy-type envelope dominates the ray trace") {
  const auto airy = second_order_homogeneous(EF::monomial(1), 1.0, 0.0);
  std::vector<double> radii;
  for (double r : uniform_radii(10.0, 200))
    if (r > 0.5) radii.push_back(r);
  const auto env = growth_envelope(airy, 0.0, radii, 0.5);
  const auto tr = ray_integrate(airy, 0.0, radii, 1e-10);
  for (std::size_t i = 0; i < radii.size(); ++i) CHECK(env.bound[i] >= std::abs(tr.values[i][0]));
  // exp(2/3 r^{3/2}) growth between the ends
  const double ratio = std::log(env.bound.back() / env.bound.front());
  const double expected = 2.0 / 3.0 * (std::pow(radii.back(), 1.5) - std::pow(radii.front(), 1.5));
  CHECK(ratio == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("the zero solution gets the zero envelope") {
  const auto env = growth_envelope(first_order(EF::constant(1.0), EF(), 0.0), 0.0, uniform_radii(4.0, 40), 0.5);
  CHECK(env.C == 0.0);
  for (double b : env.bound) CHECK(b == 0.0);
  CHECK(env.note.find("vanishes") != std::string::npos);
}

TEST_CASE("membership examples") {
  const QuadratureConfig cfg;
  const auto c = membership_probe(EF::cos(), SpaceSpec{}, cfg);
  CHECK(c.in_space);
  CHECK(c.norm.r_reached <= 12.0);
  std::vector<cplx> a(201);
  double fact = 1.0;
  for (int n = 0; n <= 100; ++n) {
    if (n > 0) fact *= n;
    a[static_cast<std::size_t>(2 * n)] = 1.0 / fact;
  }
  const auto g = membership_probe(EF::power_series(a), SpaceSpec{}, cfg);
  CHECK_FALSE(g.in_space);
  const auto z = membership_probe(EF(), SpaceSpec{}, cfg);
  CHECK(z.in_space);
  CHECK(z.norm.value == 0.0);
}

TEST_CASE("property: Taylor and ray integration agree") {
  const auto family = seeded_ode_family(20241015, 10);
  const auto res = ode_oracle_agreement(family, 200, {1.0, 2.5, 5.0}, {0.0, pi / 3.0, 3.0 * pi / 4.0}, 1e-10);
  CHECK(res.failures == 0);
  CHECK(res.comparisons == 90);
  CHECK(res.worst_rel_err <= 1e-8);
}

TEST_CASE("property: calibrated envelope dominates every sample") {
  auto family = seeded_ode_family(20241015, 10);
  family.push_back(second_order_homogeneous(EF::constant(1.0), 1.0, 0.0));
  family.push_back(second_order_homogeneous(EF::monomial(1), 1.0, 0.0));
  const auto res = envelope_domination(family, {0.0, pi / 3.0, 3.0 * pi / 4.0}, 0.5, 10.0, 200);
  CHECK(res.samples > 0);
  CHECK(res.violations == 0);
}

TEST_CASE("property: homogeneous solutions are linear in the data") {
  SeededRng rng(31);
  for (const auto& base : seeded_ode_family(99, 12)) {
    if (!base.homogeneous()) continue;
    LDEProblem u = base, v = base, w = base;
    double scale = 0.0;
    for (int j = 0; j < base.k; ++j) {
      const auto i = static_cast<std::size_t>(j);
      u.initial[i] = rng.in_disc(1.0);
      v.initial[i] = rng.in_disc(1.0);
      w.initial[i] = u.initial[i] + v.initial[i];
    }
    const auto a = taylor_solution_coefficients(u, 60), b = taylor_solution_coefficients(v, 60),
               c = taylor_solution_coefficients(w, 60);
    double gap = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
      const double rn = std::pow(2.0, static_cast<double>(n));
      gap = std::max(gap, std::abs(c[n] - a[n] - b[n]) * rn);
      scale += (std::abs(a[n]) + std::abs(b[n])) * rn;
    }
    CHECK(gap <= 1e-13 * scale);
  }
}

TEST_CASE("property: Taylor coefficients satisfy the equation") {
  for (const auto& p : seeded_ode_family(77, 10)) {
    const int N = 120;
    const auto a = taylor_solution_coefficients(p, N);
    // coefficients of f^(j)
    std::vector<std::vector<cplx>> d(static_cast<std::size_t>(p.k) + 1, std::vector<cplx>(a.size()));
    d[0] = a;
    for (int j = 1; j <= p.k; ++j) {
      for (std::size_t n = 0; n + 1 < a.size(); ++n)
        d[static_cast<std::size_t>(j)][n] = static_cast<double>(n + 1) * d[static_cast<std::size_t>(j) - 1][n + 1];
    }
    const auto F = taylor_coefficients(p.forcing, N);
    for (int n = 0; n <= N - p.k; ++n) {
      const auto un = static_cast<std::size_t>(n);
      cplx lhs = d[static_cast<std::size_t>(p.k)][un];
      double dominant = std::abs(lhs);
      for (int j = 0; j < p.k; ++j) {
        const auto Aj = taylor_coefficients(p.A[static_cast<std::size_t>(j)], N);
        for (int i = 0; i <= n; ++i) {
          const cplx t = Aj[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)][static_cast<std::size_t>(n - i)];
          lhs += t;
          dominant = std::max(dominant, std::abs(t));
        }
      }
      dominant = std::max(dominant, std::abs(F[un]));
      if (dominant <= DBL_MIN / DBL_EPSILON) continue;
      CHECK(std::abs(lhs - F[un]) <= 1e-12 * dominant);
    }
  }
}

TEST_CASE("problem bookkeeping") {
  LDEProblem p;
  p.k = 3;
  p.A = {EF::constant(1.0), EF(), EF::monomial(1)};
  p.initial = {1.0, 0.0, 0.0};
  CHECK_NOTHROW(p.validate());
  CHECK(p.nonzero_coefficients() == 2);
  CHECK(p.homogeneous());
}

}  // TEST_SUITE
