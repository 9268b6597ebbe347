#pragma once

// Hypothesis quantities of the existence/membership theorems and numerical
// probes of their conclusions. Sups over the plane are taken on declared
// grids; finiteness is decided by degree analysis where the coefficient is a
// polynomial.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fockde/entire.hpp"
#include "fockde/kernel.hpp"
#include "fockde/ode.hpp"
#include "fockde/quadrature.hpp"
#include "fockde/weights.hpp"

namespace fockde {

enum class TheoremId { T1_1, T1_2, T1_3, T1_4, T1_5, T1_6, T1_7, T1_8 };

/// "T1.3"
std::string to_string(TheoremId id);
/// Accepts "T1.3", "T1_3" and "1.3".
std::optional<TheoremId> parse_theorem_id(const std::string& text);

struct SupRatio {
  double value = 0.0;        // may be +inf
  bool at_infinity = false;  // the sup is the r -> inf limit
  double attained_at = 0.0;  // radius, meaningful when !at_infinity
  bool degree_flag = false;  // infinite because deg A > s
  bool growth_flag = false;  // infinite because A grows faster than any polynomial
  std::string route;         // how the value was decided
};

struct SupRatioGrid {
  double r_min = 1e-3;
  double r_max = 1e3;
  int points = 160;
  int n_theta = 256;
};

/// sup_z |A(z)| / (1+|z|)^s. Negative s is allowed: then only A == 0 gives a
/// finite value.
SupRatio sup_ratio(const EntireFunction& A, int s, const SupRatioGrid& grid = {});

/// The unspecified positive constants in the theorem hypotheses. Missing
/// indexed entries read as 1.
struct ConstantsConfig {
  double C = 1.0;
  std::vector<double> D;   // D_i, i < k
  std::vector<double> Ci;  // C_i, i <= k
  std::vector<double> E;   // E_j, j < k
  std::vector<double> F;
  double G = 1.0;

  static double at(const std::vector<double>& v, int i) {
    return i >= 0 && i < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(i)] : 1.0;
  }
  /// Throws std::invalid_argument unless every constant is positive.
  void validate() const;
};

/// Polar probe grid for the kernel functionals: radii x equally spaced angles.
struct ProbeGrid {
  std::vector<double> radii;
  int n_angles = 16;

  /// 12 radii geometric in [0.25, 4], 16 angles.
  static ProbeGrid standard();
  std::vector<cplx> points() const;
  std::string hash() const;
};

struct CheckConfig {
  QuadratureConfig quad;
  int taylor_order = 200;
  ConstantsConfig constants;
  ProbeGrid probe = ProbeGrid::standard();
  bool probe_unsatisfied = true;  // T1.1-T1.3: probe solutions even when the hypothesis fails
};

struct ProbeResult {
  std::string label;
  bool in_space = false;
  double value = 0.0;
  double tail_estimate = 0.0;
  double peak_radius = 0.0;
  double mass_beyond_peak = 0.0;
  double divergence_radius = 0.0;
  std::string diagnostic;
};

ProbeResult to_probe(const std::string& label, const Membership& m);

struct ConditionReport {
  TheoremId theorem = TheoremId::T1_1;
  std::vector<std::pair<std::string, double>> hypothesis_values;  // in computation order
  bool hypothesis_satisfied = false;
  std::string tag;  // "degenerate-compliant", "not applicable", ...
  std::vector<ProbeResult> probes;
  bool consistent = true;
  std::vector<std::string> notes;

  void set(const std::string& name, double value);
  std::optional<double> get(const std::string& name) const;
  /// consistent = !hypothesis_satisfied || every probe is in the space.
  void finalize();
};

/// sum C D_i sup |A_i| / (1+|z|)^{k-i} < 1 and the k-fold primitive of A_k in F^p;
/// conclusion: all solutions in F^p.
ConditionReport check_fock_solutions(const LDEProblem& problem, double p, const CheckConfig& cfg);

/// Double sum with exponents k-i-j; conclusion: all solutions in F^{p,k}.
ConditionReport check_fock_sobolev_solutions(const LDEProblem& problem, double p, const CheckConfig& cfg);

/// |A_j(r e^{i theta})| <= phi(r)^{1/2} / r beyond some r0, with nonconstant
/// coefficients; conclusion: all solutions in F^{p,q}_phi.
ConditionReport check_radial_bound_solutions(const LDEProblem& problem, const WeightProfile& profile,
                                             double p, double q, const CheckConfig& cfg);

/// Constant A_0..A_{k-1} and a solution in F^{p,k}; conclusion: A_k in F^p.
/// Without a candidate the Taylor solution of the problem is used.
ConditionReport check_forcing_membership(const LDEProblem& problem, double p,
                                         const std::optional<EntireFunction>& candidate,
                                         const CheckConfig& cfg);

/// Weight e^r. Growth of the candidate below e^{e^r}, A_j (1<=j<k) in
/// F^p_{e^r/2}, A_k/f in F^{p,q}_{e^r}; conclusion: A_0 in F^{p,q}_{e^r}.
/// When the problem has no forcing it is derived from the candidate as
/// f^(k) + sum_j A_j f^(j). Throws std::domain_error when the candidate
/// vanishes on the probe set.
ConditionReport check_double_exponential_coefficient(const LDEProblem& problem, double p, double q,
                                                     const EntireFunction& candidate,
                                                     const CheckConfig& cfg);

struct KernelFunctional {
  double value = 0.0;
  cplx attained_at{0.0, 0.0};
  double side_value = 0.0;    // sup of the side-condition quantity on the grid
  bool side_bounded = true;   // side quantity does not grow past the grid
  bool tail_decay = true;     // objective beyond the grid stays below the grid sup
  bool weight_growth = true;  // only for Y_K: 2 phi - r^2/2 grows without bound
  bool admissible = true;     // only for Z_K: derivative norm-equivalence hypotheses
  bool converged = true;
  double noise_floor = 0.0;   // largest rounding bound on the grid; values below it read as 0
  std::string grid_hash;
};

KernelFunctional xk_functional(const WeightProfile& profile, const EntireFunction& A,
                               const KernelBasis& basis, const CheckConfig& cfg);
KernelFunctional yk_functional(const WeightProfile& profile, const EntireFunction& A,
                               const KernelBasis& basis, const CheckConfig& cfg);
KernelFunctional zk_functional(const WeightProfile& profile, const EntireFunction& A,
                               const KernelBasis& basis, const CheckConfig& cfg);

/// For T1_6, T1_7, T1_8: the matching functional, then f'' + A f = 0 with data
/// (1, 0) and (0, 1) probed in the space named by the conclusion.
ConditionReport check_kernel_theorem(TheoremId id, const WeightProfile& profile, const EntireFunction& A,
                                     const KernelBasis& basis, const CheckConfig& cfg);

}  // namespace fockde
