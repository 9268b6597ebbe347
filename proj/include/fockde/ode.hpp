#pragma once

// Linear equations f^(k) + A_{k-1} f^(k-1) + ... + A_0 f = A_k with entire
// coefficients: Taylor solutions, adaptive integration along rays, and the
// explicit growth envelope along a ray.

#include <span>
#include <string>
#include <vector>

#include "fockde/entire.hpp"
#include "fockde/quadrature.hpp"

namespace fockde {

struct LDEProblem {
  int k = 1;
  std::vector<EntireFunction> A;  // A_0 .. A_{k-1}
  EntireFunction forcing;         // A_k; the zero function for homogeneous problems
  std::vector<cplx> initial;      // f(0), f'(0), ..., f^(k-1)(0)

  /// Throws std::invalid_argument on k < 1 or mismatched lengths.
  void validate() const;
  /// Number of coefficients A_j, j < k, that are not identically zero.
  int nonzero_coefficients() const;
  bool homogeneous() const { return is_zero(forcing); }
};

/// f'' + a f = 0 with the given initial data.
LDEProblem second_order_homogeneous(EntireFunction a, cplx f0, cplx f1);

/// Taylor coefficients a_0..a_N of the solution, from the recurrence
/// a_{n+k} = [F_n - sum_j (A_j f^(j))_n] / ((n+1)...(n+k)).
/// Throws std::invalid_argument when N < k and std::overflow_error naming
/// the index when a coefficient stops being finite.
std::vector<cplx> taylor_solution_coefficients(const LDEProblem& problem, int N);

/// The Taylor solution as a certified power series of degree N.
EntireFunction taylor_solve(const LDEProblem& problem, int N, double tail_tol = 1e-12);

struct RayTrace {
  double theta = 0.0;
  std::vector<double> radii;
  std::vector<std::vector<cplx>> values;  // (f, f', ..., f^(k-1)) at each radius
  std::vector<double> envelope;           // optional
  std::vector<double> weighted;           // optional |f| e^{-phi}
  bool blowup = false;
  double last_radius = 0.0;
  int steps = 0;
  int rejected = 0;
};

/// `count` radii evenly spaced in (0, r_max], ending exactly at r_max.
std::vector<double> uniform_radii(double r_max, int count);
/// r_i = r0 * rho^i, i = 0..count-1.
std::vector<double> geometric_radii(double r0, double rho, int count);

/// Dormand-Prince 5(4) on w(t) = (f, ..., f^(k-1))(t e^{i theta}), landing on
/// every output radius. The local error estimate is kept below
/// tol * max(1, |w|_inf). A step size below 1e-12 stops the trace with the
/// blowup flag set.
RayTrace ray_integrate(const LDEProblem& problem, double theta, std::span<const double> radii,
                       double tol);
RayTrace ray_integrate(const LDEProblem& problem, double theta, double r_max, double tol,
                       int samples = 64);

struct GrowthEnvelope {
  double theta = 0.0;
  double R0 = 0.0;        // calibration radius actually used
  bool R0_shifted = false;
  double C = 0.0;
  int k_c = 0;
  double delta = 0.0;     // 0 for homogeneous problems, 1 otherwise
  std::vector<double> radii;
  std::vector<double> bound;
  std::string note;
};

/// B(r) = C (max_{x<=r} |A_k(x e^{i theta})| + 1) exp int_0^r (delta + k_c max_j |A_j|^{1/(k-j)}) ds.
///
/// C is calibrated at R0 from the ray trace: B(R0) = 2 sum_j |f^(j)(R0 e^{i theta})| / l^j,
/// with l the integrand rate at R0 (or 1 where that rate vanishes). When f and
/// all its derivatives vanish at R0 the calibration moves to the next radius.
GrowthEnvelope growth_envelope(const LDEProblem& problem, double theta,
                               std::span<const double> radii, double R0);

struct Membership {
  bool in_space = false;
  NormResult norm;
  std::string diagnostic;
};

/// Runs the weighted norm and reads convergence as membership. Evaluation
/// failures (series certificates) are reported as not in the space.
Membership membership_probe(const EntireFunction& f, const SpaceSpec& space,
                            const QuadratureConfig& cfg);
Membership membership_probe(const ComplexIntegrand& f, const SpaceSpec& space,
                            const QuadratureConfig& cfg);

}  // namespace fockde
