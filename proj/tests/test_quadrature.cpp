#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "fockde/battery.hpp"
#include "fockde/quadrature.hpp"

using namespace fockde;
using EF = EntireFunction;

namespace {

constexpr double pi = std::numbers::pi;

// Composite Simpson on [0, b] with n (even) intervals.
template <class F>
double simpson(F f, double b, int n) {
  const double h = b / n;
  double s = f(0.0) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("plane integral examples") {
  const QuadratureConfig cfg;
  const auto g = plane_integral([](cplx z) { return std::exp(-std::norm(z)); }, cfg);
  CHECK(g.converged);
  CHECK(std::abs(g.value - pi) <= 1e-10 * pi);
  const auto disc = plane_integral([](cplx z) { return std::abs(z) <= 1.0 ? 1.0 : 0.0; }, cfg);
  CHECK(std::abs(disc.value - pi) <= 1e-6);
  const auto m = plane_integral([](cplx z) { return std::norm(z) * std::exp(-std::norm(z)); }, cfg);
  CHECK(std::abs(m.value - pi) <= 1e-10 * pi);
}

TEST_CASE("growing integrand is a diverging verdict") {
  QuadratureConfig cfg;
  cfg.hard_cap = 60.0;
  // decays like a Gaussian, then the e^{r/2} term takes over near r = 3
  const auto r = plane_integral([](cplx z) { return std::exp(-std::norm(z)) + std::exp(0.5 * std::abs(z) - 6.0); }, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.divergence_radius > 1.0);
  CHECK(r.divergence_radius < 30.0);
  CHECK(r.diagnostic.find("divergent integrand") != std::string::npos);
}

TEST_CASE("segment integral examples") {
  CHECK(std::abs(segment_integral([](cplx z) { return z; }, {1.0, 1.0}, 16) - cplx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(segment_integral([](cplx) { return cplx(1.0); }, 3.0, 16) - 3.0) < 1e-15);
  CHECK(std::abs(segment_integral([](cplx z) { return std::exp(z); }, 1.0, 16) - (std::exp(1.0) - 1.0)) < 1e-14);
}

TEST_CASE("weighted norm examples") {
  const QuadratureConfig cfg;
  SpaceSpec sp;
  CHECK(weighted_norm(EF::constant(1.0), sp, cfg).value == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
  CHECK(weighted_norm(EF::monomial(1), sp, cfg).value == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
  sp.p = std::numeric_limits<double>::infinity();
  const auto sup = weighted_norm(EF::constant(1.0), sp, cfg);
  CHECK(sup.value == 1.0);
  CHECK(sup.peak_radius == 0.0);
}

TEST_CASE("weighted norm with a power of phi") {
  // int |1|^2 e^{-2 r^3} r^3 dm = 2 pi int r^4 e^{-2 r^3} dr = 2 pi Gamma(5/3) / (3 * 2^{5/3})
  SpaceSpec sp;
  sp.weight = WeightProfile::power(3);
  sp.q = 1.0;
  const double ref = 2.0 * pi * std::tgamma(5.0 / 3.0) / (3.0 * std::pow(2.0, 5.0 / 3.0));
  const auto r = weighted_norm(EF::constant(1.0), sp, QuadratureConfig{});
  CHECK(r.converged);
  CHECK(r.integral == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("q requires a non-classical weight") {
  SpaceSpec sp;
  sp.q = 1.0;
  CHECK_THROWS_AS(sp.validate(), std::invalid_argument);
}

TEST_CASE("quasi-norm exponents are flagged") {
  SpaceSpec sp;
  sp.p = 0.5;
  const auto r = weighted_norm(EF::constant(1.0), sp, QuadratureConfig{});
  CHECK(r.quasi_norm);
  // int e^{-|z|^2 / 4} dm = 4 pi
  CHECK(r.integral == doctest::Approx(4.0 * pi).epsilon(1e-10));
}

TEST_CASE("Fock-Sobolev norm examples") {
  const QuadratureConfig cfg;
  const auto one = fock_sobolev_norm(EF::constant(1.0), 2.0, 1, cfg);
  CHECK(one.direct == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
  CHECK(one.equivalent == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
  const auto zero = fock_sobolev_norm(EF(), 3.0, 2, cfg);
  CHECK(zero.direct == 0.0);
  CHECK(zero.equivalent == 0.0);
  const auto z = fock_sobolev_norm(EF::monomial(1), 2.0, 1, cfg);
  CHECK(z.direct == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-10));
  CHECK(z.equivalent == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-10));
}

TEST_CASE("derivative equivalence examples") {
  const QuadratureConfig cfg;
  const auto one = fock_derivative_equivalence(EF::constant(1.0), 2.0, 1, cfg);
  CHECK(one.middle == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.ratio == doctest::Approx(1.0 / std::sqrt(pi)).epsilon(1e-10));

  const auto z = fock_derivative_equivalence(EF::monomial(1), 2.0, 1, cfg);
  const double oracle = std::sqrt(
      2.0 * pi * simpson([](double r) { return r * std::exp(-r * r) / ((1.0 + r) * (1.0 + r)); }, 12.0, 20000));
  CHECK(z.middle == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(z.ratio > 0.0);
  CHECK(std::isfinite(z.ratio));

  const auto z5 = fock_derivative_equivalence(EF::monomial(5), 2.0, 2, cfg);
  CHECK(z5.ratio >= 0.01);
  CHECK(z5.ratio <= 100.0);
}

TEST_CASE("property: homogeneity of the norms") {
  SeededRng rng(13);
  const QuadratureConfig cfg;
  std::vector<SpaceSpec> spaces(5);
  spaces[1].p = 1.0;
  spaces[2].p = std::numeric_limits<double>::infinity();
  spaces[3].weight = WeightProfile::power(3);
  spaces[4].weight = WeightProfile::exponential(1.0);
  spaces[4].q = 1.0;
  for (const auto& sp : spaces) {
    for (int t = 0; t < 3; ++t) {
      const EF f = random_polynomial(rng, rng.integer(0, 4));
      const cplx c = rng.in_disc(5.0);
      const double a = weighted_norm(c * f, sp, cfg).value, b = weighted_norm(f, sp, cfg).value;
      CHECK(std::abs(a - std::abs(c) * b) <= 1e-12 * std::abs(c) * b);
    }
  }
}

TEST_CASE("property: refinement changes converged results below ten tail tolerances") {
  SeededRng rng(17);
  const QuadratureConfig cfg;
  const QuadratureConfig fine = cfg.scaled(2.0);
  for (int t = 0; t < 4; ++t) {
    const EF f = random_polynomial(rng, rng.integer(0, 4));
    const auto a = weighted_norm(f, SpaceSpec{}, cfg), b = weighted_norm(f, SpaceSpec{}, fine);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(std::abs(a.value - b.value) < 10.0 * cfg.tail_tol * b.value);
  }
}

TEST_CASE("property: converged norms respect the tail bound") {
  const QuadratureConfig cfg;
  for (const EF& f : {EF::constant(1.0), EF::monomial(3), EF::cos()}) {
    const auto r = weighted_norm(f, SpaceSpec{}, cfg);
    REQUIRE(r.converged);
    CHECK(r.tail_estimate <= cfg.tail_tol * r.integral);
  }
}

TEST_CASE("property: the plane integral is dominated by its tail") {
  QuadratureConfig inner;
  inner.r_max = 1.0;
  const QuadratureConfig cfg;
  for (const EF& f : {EF::constant(1.0), EF::monomial(1), EF::monomial(2), EF::cos()}) {
    const auto full = weighted_norm(f, SpaceSpec{}, cfg);
    const auto disc = weighted_norm(f, SpaceSpec{}, inner);
    const double outer = full.integral - disc.integral;
    REQUIRE(outer > 0.0);
    const double c_obs = full.integral / outer;
    CHECK(std::isfinite(c_obs));
    CHECK(c_obs >= 1.0);
  }
  // f = 1: outer mass is e^{-1} of the total
  const double ratio = weighted_norm(EF::constant(1.0), SpaceSpec{}, cfg).integral /
                       (weighted_norm(EF::constant(1.0), SpaceSpec{}, cfg).integral -
                        weighted_norm(EF::constant(1.0), SpaceSpec{}, inner).integral);
  CHECK(ratio == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
}

TEST_CASE("property: sup norm of one is e^{-phi(0)} at the origin") {
  SpaceSpec sp;
  sp.p = std::numeric_limits<double>::infinity();
  for (const auto& w : {WeightProfile::power(3), WeightProfile::exponential(1.0), WeightProfile::double_exponential(),
                        WeightProfile::power(2.5)}) {
    sp.weight = w;
    const auto r = weighted_norm(EF::constant(1.0), sp, QuadratureConfig{});
    CHECK(r.value == doctest::Approx(std::exp(-w.phi(0.0))).epsilon(4 * std::numeric_limits<double>::epsilon()));
    CHECK(r.peak_radius == 0.0);
  }
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.n_radial = 16;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = QuadratureConfig{};
  cfg.n_angular = 32;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = QuadratureConfig{};
  cfg.segment_nodes = 8;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(QuadratureConfig{}.scaled(0.01).n_radial == 32);
}

TEST_CASE("summation is deterministic") {
  const QuadratureConfig cfg;
  const auto a = weighted_norm(EF::cos(), SpaceSpec{}, cfg), b = weighted_norm(EF::cos(), SpaceSpec{}, cfg);
  CHECK(a.value == b.value);
  CHECK(a.tail_estimate == b.tail_estimate);
}

}  // TEST_SUITE
