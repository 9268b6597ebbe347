#include <doctest.h>

#include <cmath>
#include <limits>

#include "fockde/battery.hpp"
#include "fockde/weights.hpp"

using namespace fockde;

TEST_SUITE("weights") {

TEST_CASE("laplacian of r^3 at 2 is 9r") {
  CHECK(laplacian_radial(WeightProfile::power(3), 2.0) == doctest::Approx(18.0).epsilon(1e-15));
}

TEST_CASE("laplacian of the classical weight is 2") {
  CHECK(laplacian_radial(WeightProfile::classical_gaussian(), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(laplacian_radial(WeightProfile::classical_gaussian(), 0.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("laplacian of e^r at 1 is 2e") {
  CHECK(laplacian_radial(WeightProfile::exponential(1.0), 1.0) ==
        doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("laplacian overflow is reported") {
  CHECK_THROWS_WITH_AS(laplacian_radial(WeightProfile::double_exponential(), 800.0), "weight derivative overflow",
                       std::domain_error);
}

TEST_CASE("tau values") {
  CHECK(tau(WeightProfile::power(3), 4.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(tau(WeightProfile::power(3), 0.5, 2.0) == 2.0);
  CHECK(tau(WeightProfile::exponential(1.0), 0.5, 2.0) == 2.0);
  CHECK(tau(WeightProfile::classical_gaussian(), 10.0, 1.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("tau plateau makes tau continuous at 1") {
  const auto w = WeightProfile::power(3);
  const double c = tau_plateau_constant(w);
  CHECK(c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(tau(w, 0.999, c) == doctest::Approx(tau(w, 1.0, c)).epsilon(1e-15));
}

TEST_CASE("classification of the standard profiles") {
  const auto cube = classify_weight(WeightProfile::power(3), 100.0, 64);
  CHECK(cube.class_I());
  CHECK(cube.phi_over_r2_diverges);
  CHECK_FALSE(classify_weight(WeightProfile::classical_gaussian(), 100.0, 64).class_I());
  CHECK(classify_weight(WeightProfile::exponential(1.0), 50.0, 64).class_I());
  CHECK(classify_weight(WeightProfile::double_exponential(), 20.0, 64).class_I());
}

TEST_CASE("power weights are class I exactly when alpha exceeds 2") {
  for (double alpha : {1.0, 2.0, 2.5, 3.0, 5.0}) {
    CAPTURE(alpha);
    CHECK(classify_weight(WeightProfile::power(alpha), 100.0, 64).class_I() == (alpha > 2.0));
  }
}

TEST_CASE("classification reports its sample grid") {
  const auto d = classify_weight(WeightProfile::power(3), 100.0, 32);
  REQUIRE(d.sample_grid.size() == 32);
  CHECK(d.sample_grid.front().r == doctest::Approx(1.0));
  CHECK(d.sample_grid.back().r == doctest::Approx(100.0));
  for (std::size_t i = 1; i < d.sample_grid.size(); ++i) CHECK(d.sample_grid[i].r > d.sample_grid[i - 1].r);
}

TEST_CASE("derivative norm admissibility flags") {
  CHECK(derivative_norm_admissible(WeightProfile::power(3), 2.0, 50.0).all());
  CHECK(derivative_norm_admissible(WeightProfile::exponential(1.0), 1.0, 50.0).all());
  CHECK(derivative_norm_admissible(WeightProfile::classical_gaussian(), 2.0, 50.0).all());
}

TEST_CASE("property: tau^2 times the laplacian is one") {
  SeededRng rng(7);
  for (const auto& w : {WeightProfile::power(2.5), WeightProfile::power(3), WeightProfile::power(5),
                        WeightProfile::exponential(0.5), WeightProfile::exponential(1.0),
                        WeightProfile::double_exponential()}) {
    const double r_max = w.kind() == WeightKind::double_exponential ? 6.0 : 50.0;
    for (int i = 0; i < 20; ++i) {
      const double r = rng.uniform(1.0, r_max);
      const double t = tau(w, r, 1.0);
      CHECK(std::abs(t * t * laplacian_radial(w, r) - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon());
    }
  }
}

TEST_CASE("property: derivatives agree with central differences") {
  SeededRng rng(11);
  for (const auto& w : {WeightProfile::power(3), WeightProfile::exponential(1.0), WeightProfile::classical_gaussian(),
                        WeightProfile::scaled_exponential(0.5), WeightProfile::double_exponential()}) {
    for (int i = 0; i < 20; ++i) {
      const double r = rng.uniform(0.5, 3.0);
      const double h = 1e-5 * (1.0 + r);
      const double d1 = (w.phi(r + h) - w.phi(r - h)) / (2.0 * h);
      const double d2 = (w.phi_prime(r + h) - w.phi_prime(r - h)) / (2.0 * h);
      CHECK(d1 == doctest::Approx(w.phi_prime(r)).epsilon(1e-6));
      CHECK(d2 == doctest::Approx(w.phi_second(r)).epsilon(1e-6));
    }
  }
}

TEST_CASE("log-domain evaluators match the plain ones") {
  const auto w = WeightProfile::exponential(1.0);
  for (double r : {0.5, 1.0, 3.0}) {
    CHECK(w.log_phi(r) == doctest::Approx(std::log(w.phi(r))).epsilon(1e-14));
    CHECK(w.log_phi_prime(r) == doctest::Approx(std::log(w.phi_prime(r))).epsilon(1e-14));
  }
  CHECK(std::isfinite(WeightProfile::double_exponential().log_laplacian(50.0)));
}

}  // TEST_SUITE
