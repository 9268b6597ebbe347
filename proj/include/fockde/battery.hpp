#pragma once

// The invariant suite, run from a seed. Every case is deterministic given the
// seed and the quadrature configuration. The seeded generators are shared with
// the tests and the acceptance driver.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fockde/conditions.hpp"
#include "fockde/entire.hpp"
#include "fockde/ode.hpp"
#include "fockde/quadrature.hpp"

namespace fockde {

/// mt19937_64 with explicit mappings to doubles and integers, so that draws
/// do not depend on the standard library's distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  /// Uniform in the disc |z| <= radius.
  cplx in_disc(double radius);
  /// Real and imaginary parts uniform in [-1, 1], rescaled into |c| <= 1.
  cplx unit_coefficient();

 private:
  std::mt19937_64 engine_;
};

/// Polynomial of exact degree `degree` with coefficients in the unit disc.
EntireFunction random_polynomial(SeededRng& rng, int degree);

/// Problems with k in {1, 2, 3}, polynomial coefficients with
/// deg A_j <= min(max_degree, k - j), |coefficients| <= 1, random initial data
/// in the unit disc and, for every other problem, a polynomial forcing.
std::vector<LDEProblem> seeded_ode_family(std::uint64_t seed, int count, int max_degree = 2);

/// Same family without the k - j cap on the coefficient degrees.
std::vector<LDEProblem> seeded_ode_family_unrestricted(std::uint64_t seed, int count, int max_degree = 2);

struct OracleAgreement {
  double worst_rel_err = 0.0;
  int comparisons = 0;
  int failures = 0;  // rays that blew up or Taylor sums that failed to certify
  std::string worst_case;
};

/// Taylor solution (order N) against ray integration at the given radii and angles.
OracleAgreement ode_oracle_agreement(const std::vector<LDEProblem>& problems, int N,
                                     const std::vector<double>& radii,
                                     const std::vector<double>& thetas, double tol);

struct EnvelopeCheck {
  int samples = 0;
  int violations = 0;
  double worst_ratio = 0.0;  // max |f| / B over the samples
  std::string worst_case;
};

/// Calibrates at R0 and compares |f| with the envelope on `count` radii in (R0, r_max].
EnvelopeCheck envelope_domination(const std::vector<LDEProblem>& problems,
                                  const std::vector<double>& thetas, double R0, double r_max,
                                  int count);

struct DegeneracyCase {
  LDEProblem problem;
  bool hypothesis_satisfied = false;
  bool degenerate = false;  // A_0 constant and A_1..A_{k-1} identically zero
  bool consistent = true;
};

/// Seeded coefficient lists for the Fock-Sobolev checker, mixing degenerate
/// and non-degenerate lists of small and large size.
std::vector<DegeneracyCase> sobolev_degeneracy_cases(std::uint64_t seed, int count,
                                                     const CheckConfig& cfg);

struct BatteryCase {
  std::string module;
  std::string name;
  bool passed = false;
  double metric = 0.0;  // the worst observed value of the checked quantity
  std::string detail;
};

struct BatteryReport {
  std::uint64_t seed = 0;
  std::vector<BatteryCase> cases;
  bool all_passed() const;
};

/// Names of the battery cases in run order.
std::vector<std::string> battery_case_names();

/// Runs one named case. Throws std::invalid_argument for an unknown name.
BatteryCase run_battery_case(const std::string& name, std::uint64_t seed, const QuadratureConfig& quad);

/// Every case in order.
BatteryReport run_battery(std::uint64_t seed, const QuadratureConfig& quad);

}  // namespace fockde
