#pragma once

// Radial weights phi(|z|) for the weighted Fock spaces, together with
// numerical diagnostics for the class of rapidly increasing weights.

#include <string>
#include <vector>

namespace fockde {

enum class WeightKind {
  power,               // r^alpha
  exponential,         // e^{beta r}
  double_exponential,  // e^{e^r}
  classical_gaussian,  // r^2 / 2
  scaled_exponential,  // c e^r
};

std::string to_string(WeightKind kind);

/// Radial weight with exact first and second derivatives.
///
/// Besides the plain evaluators, log-domain versions are provided because
/// e^{e^r} overflows a double well before the radii at which diagnostics
/// are taken.
class WeightProfile {
 public:
  static WeightProfile power(double alpha);
  static WeightProfile exponential(double beta);
  static WeightProfile double_exponential();
  static WeightProfile classical_gaussian();
  static WeightProfile scaled_exponential(double c);

  WeightKind kind() const { return kind_; }
  /// alpha, beta or c depending on the kind; 0 for parameterless kinds.
  double parameter() const { return param_; }
  const std::string& label() const { return label_; }

  double phi(double r) const;
  double phi_prime(double r) const;
  double phi_second(double r) const;

  double log_phi(double r) const;
  /// log phi'(r); -inf where phi'(r) == 0.
  double log_phi_prime(double r) const;
  /// log of Laplacian phi'' + phi'/r, for r > 0.
  double log_laplacian(double r) const;
  /// (1/r) (r / phi'(r))' evaluated without overflow.
  double derivative_ratio_slope(double r) const;

  bool operator==(const WeightProfile& other) const {
    return kind_ == other.kind_ && param_ == other.param_;
  }

 private:
  WeightProfile(WeightKind kind, double param, std::string label)
      : kind_(kind), param_(param), label_(std::move(label)) {}

  WeightKind kind_;
  double param_;
  std::string label_;
};

/// Radial Laplacian phi''(r) + phi'(r)/r. At r = 0 the right limit of the
/// closed form is used. Throws std::domain_error("weight derivative
/// overflow") when the value is not finite.
double laplacian_radial(const WeightProfile& profile, double r);

/// tau(r) = C on [0,1), (Laplacian)^{-1/2} for r >= 1.
/// Throws std::domain_error when the Laplacian is not positive at r.
double tau(const WeightProfile& profile, double r, double plateau);

/// Plateau constant that makes tau continuous at r = 1.
double tau_plateau_constant(const WeightProfile& profile);

enum class RegularityRoute { tau_rC_increasing, tau_prime_log_vanishes, neither };

std::string to_string(RegularityRoute route);

struct WeightSample {
  double r;
  double log_laplacian;
  double log_tau;
};

struct DerivativeNormFlags {
  bool derivative_nonzero = false;
  bool decay = false;
  bool bracket_below_p = false;
  double liminf = 0.0;
  double limsup = 0.0;
  double decay_log_value = 0.0;  // log(r e^{-p phi}/phi') at r_max
  bool all() const { return derivative_nonzero && decay && bracket_below_p; }
};

struct WeightDiagnostics {
  bool laplacian_positive = false;
  bool tau_vanishes = false;
  bool tau_monotone_tail = false;  // flagged, never fatal
  double tau_tail_log_slope = 0.0;
  RegularityRoute regularity_route = RegularityRoute::neither;
  double route_exponent = 0.0;  // the C in tau(r) r^C when that route holds
  double tau_prime_log_tail = 0.0;
  bool phi_over_r2_diverges = false;
  double r_max = 0.0;
  std::vector<WeightSample> sample_grid;
  std::vector<std::string> notes;

  bool class_I() const {
    return laplacian_positive && tau_vanishes &&
           regularity_route != RegularityRoute::neither;
  }
};

/// Grid-based certification of the class-I conditions on [1, r_max].
/// Inconclusive checks are reported as flags; nothing throws.
WeightDiagnostics classify_weight(const WeightProfile& profile, double r_max,
                                  int n_samples);

/// The three hypotheses of the derivative norm-equivalence lemma, checked
/// on the tail of a grid ending at r_max.
DerivativeNormFlags derivative_norm_admissible(const WeightProfile& profile, double p, double r_max);

}  // namespace fockde
