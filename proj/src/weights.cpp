#include "fockde/weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fockde {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance on tau'(r) used by the "tau' log(1/tau) -> 0" route.
constexpr double kTauPrimeTol = 1e-4;

std::vector<double> log_grid(double r_lo, double r_hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double a = std::log(r_lo);
  const double b = std::log(r_hi);
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  }
  grid.back() = r_hi;
  return grid;
}

}  // namespace

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::power: return "power";
    case WeightKind::exponential: return "exponential";
    case WeightKind::double_exponential: return "double_exponential";
    case WeightKind::classical_gaussian: return "classical_gaussian";
    case WeightKind::scaled_exponential: return "scaled_exponential";
  }
  return "unknown";
}

std::string to_string(RegularityRoute route) {
  switch (route) {
    case RegularityRoute::tau_rC_increasing: return "tau_rC_increasing";
    case RegularityRoute::tau_prime_log_vanishes: return "tau_prime_log_vanishes";
    case RegularityRoute::neither: return "neither";
  }
  return "neither";
}

WeightProfile WeightProfile::power(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power weight requires alpha > 0");
  return {WeightKind::power, alpha, "r^" + std::to_string(alpha)};
}

WeightProfile WeightProfile::exponential(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("exponential weight requires beta > 0");
  return {WeightKind::exponential, beta, "exp(" + std::to_string(beta) + " r)"};
}

WeightProfile WeightProfile::double_exponential() {
  return {WeightKind::double_exponential, 0.0, "exp(exp(r))"};
}

WeightProfile WeightProfile::classical_gaussian() {
  return {WeightKind::classical_gaussian, 0.0, "r^2/2"};
}

WeightProfile WeightProfile::scaled_exponential(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scaled exponential weight requires c > 0");
  return {WeightKind::scaled_exponential, c, std::to_string(c) + " exp(r)"};
}

double WeightProfile::phi(double r) const {
  switch (kind_) {
    case WeightKind::power: return std::pow(r, param_);
    case WeightKind::exponential: return std::exp(param_ * r);
    case WeightKind::double_exponential: return std::exp(std::exp(r));
    case WeightKind::classical_gaussian: return 0.5 * r * r;
    case WeightKind::scaled_exponential: return param_ * std::exp(r);
  }
  return 0.0;
}

double WeightProfile::phi_prime(double r) const {
  switch (kind_) {
    case WeightKind::power: return param_ * std::pow(r, param_ - 1.0);
    case WeightKind::exponential: return param_ * std::exp(param_ * r);
    case WeightKind::double_exponential: return std::exp(r + std::exp(r));
    case WeightKind::classical_gaussian: return r;
    case WeightKind::scaled_exponential: return param_ * std::exp(r);
  }
  return 0.0;
}

double WeightProfile::phi_second(double r) const {
  switch (kind_) {
    case WeightKind::power: return param_ * (param_ - 1.0) * std::pow(r, param_ - 2.0);
    case WeightKind::exponential: return param_ * param_ * std::exp(param_ * r);
    case WeightKind::double_exponential: {
      const double er = std::exp(r);
      return std::exp(er) * (er + er * er);
    }
    case WeightKind::classical_gaussian: return 1.0;
    case WeightKind::scaled_exponential: return param_ * std::exp(r);
  }
  return 0.0;
}

double WeightProfile::log_phi(double r) const {
  switch (kind_) {
    case WeightKind::power: return param_ * std::log(r);
    case WeightKind::exponential: return param_ * r;
    case WeightKind::double_exponential: return std::exp(r);
    case WeightKind::classical_gaussian: return 2.0 * std::log(r) - std::log(2.0);
    case WeightKind::scaled_exponential: return std::log(param_) + r;
  }
  return 0.0;
}

double WeightProfile::log_phi_prime(double r) const {
  switch (kind_) {
    case WeightKind::power: return std::log(param_) + (param_ - 1.0) * std::log(r);
    case WeightKind::exponential: return std::log(param_) + param_ * r;
    case WeightKind::double_exponential: return r + std::exp(r);
    case WeightKind::classical_gaussian: return std::log(r);
    case WeightKind::scaled_exponential: return std::log(param_) + r;
  }
  return 0.0;
}

double WeightProfile::log_laplacian(double r) const {
  switch (kind_) {
    case WeightKind::power:
      return 2.0 * std::log(param_) + (param_ - 2.0) * std::log(r);
    case WeightKind::exponential:
      return param_ * r + std::log(param_ * param_ + param_ / r);
    case WeightKind::double_exponential: {
      const double er = std::exp(r);
      return er + r + std::log(1.0 + er + 1.0 / r);
    }
    case WeightKind::classical_gaussian: return std::log(2.0);
    case WeightKind::scaled_exponential:
      return std::log(param_) + r + std::log(1.0 + 1.0 / r);
  }
  return 0.0;
}

double WeightProfile::derivative_ratio_slope(double r) const {
  switch (kind_) {
    case WeightKind::power: return (2.0 - param_) / (param_ * std::pow(r, param_));
    case WeightKind::exponential: {
      return std::exp(-param_ * r) * (1.0 / (param_ * r) - 1.0);
    }
    case WeightKind::double_exponential: {
      const double emr = std::exp(-r);
      return std::exp(-std::exp(r)) * (emr / r - emr - 1.0);
    }
    case WeightKind::classical_gaussian: return 0.0;
    case WeightKind::scaled_exponential:
      return std::exp(-r) * (1.0 / r - 1.0) / param_;
  }
  return 0.0;
}

double laplacian_radial(const WeightProfile& profile, double r) {
  if (r < 0.0) throw std::invalid_argument("laplacian_radial: negative radius");
  double value = 0.0;
  if (r == 0.0) {
    switch (profile.kind()) {
      case WeightKind::power: {
        // alpha^2 r^{alpha-2}
        const double a = profile.parameter();
        value = a > 2.0 ? 0.0 : (a == 2.0 ? 4.0 : kInf);
        break;
      }
      case WeightKind::classical_gaussian: value = 2.0; break;
      default: value = kInf; break;  // phi'(0) > 0, so phi'/r blows up
    }
  } else {
    value = profile.phi_second(r) + profile.phi_prime(r) / r;
  }
  if (!std::isfinite(value)) throw std::domain_error("weight derivative overflow");
  return value;
}

double tau(const WeightProfile& profile, double r, double plateau) {
  if (!(plateau > 0.0)) throw std::invalid_argument("tau: plateau constant must be positive");
  if (r < 1.0) return plateau;
  const double lap = profile.phi_second(r) + profile.phi_prime(r) / r;
  if (std::isfinite(lap)) {
    if (!(lap > 0.0)) throw std::domain_error("weight not rapidly increasing at r");
    return 1.0 / std::sqrt(lap);
  }
  return std::exp(-0.5 * profile.log_laplacian(r));
}

double tau_plateau_constant(const WeightProfile& profile) {
  return tau(profile, 1.0, 1.0);
}

WeightDiagnostics classify_weight(const WeightProfile& profile, double r_max, int n_samples) {
  if (r_max < 10.0) throw std::invalid_argument("classify_weight: r_max must be >= 10");
  if (n_samples < 16) throw std::invalid_argument("classify_weight: n_samples must be >= 16");

  WeightDiagnostics d;
  d.r_max = r_max;
  const auto grid = log_grid(1.0, r_max, n_samples);
  d.sample_grid.reserve(grid.size());
  d.laplacian_positive = true;
  for (double r : grid) {
    const double ll = profile.log_laplacian(r);
    if (std::isnan(ll) || ll == -kInf) d.laplacian_positive = false;
    d.sample_grid.push_back({r, ll, -0.5 * ll});
  }

  const std::size_t n = grid.size();
  const std::size_t q0 = 3 * (n - 1) / 4;
  const auto& s = d.sample_grid;

  d.tau_tail_log_slope =
      (s[n - 1].log_tau - s[q0].log_tau) / (std::log(s[n - 1].r) - std::log(s[q0].r));
  d.tau_monotone_tail = true;
  for (std::size_t i = q0 + 1; i < n; ++i) {
    if (!(s[i].log_tau < s[i - 1].log_tau)) d.tau_monotone_tail = false;
  }
  d.tau_vanishes = d.laplacian_positive && d.tau_tail_log_slope < -1e-2 &&
                   s[n - 1].log_tau < s[0].log_tau;
  if (d.tau_vanishes && !d.tau_monotone_tail) {
    d.notes.push_back("tau decays on the tail but not monotonically");
  }

  // Route 1: tau(r) r^C increasing on the tail for one of the scanned C.
  bool route_a = false;
  for (double c : {0.5, 1.0, 2.0, 4.0}) {
    bool increasing = true;
    for (std::size_t i = q0 + 1; i < n && increasing; ++i) {
      const double cur = s[i].log_tau + c * std::log(s[i].r);
      const double prev = s[i - 1].log_tau + c * std::log(s[i - 1].r);
      if (!(cur > prev)) increasing = false;
    }
    if (increasing) {
      route_a = true;
      d.route_exponent = c;
      break;
    }
  }

  // Route 2: tau'(r) log(1/tau(r)) -> 0, with tau' = tau (log tau)'.
  auto tau_prime_log = [&](double r) {
    const double h = 1e-5 * (1.0 + r);
    const double dlog = -0.5 * (profile.log_laplacian(r + h) - profile.log_laplacian(r - h)) / (2 * h);
    const double lt = -0.5 * profile.log_laplacian(r);
    if (dlog == 0.0 || lt == 0.0) return 0.0;
    return std::exp(lt + std::log(std::fabs(dlog)) + std::log(std::fabs(lt)));
  };
  d.tau_prime_log_tail = tau_prime_log(grid.back());
  const bool route_b = d.tau_prime_log_tail < 10.0 * kTauPrimeTol &&
                       d.tau_prime_log_tail <= tau_prime_log(grid[q0]) * (1.0 + 1e-9);

  if (route_a) {
    d.regularity_route = RegularityRoute::tau_rC_increasing;
    if (route_b) d.notes.push_back("tau' log(1/tau) also vanishes on the tail");
  } else if (route_b) {
    d.regularity_route = RegularityRoute::tau_prime_log_vanishes;
  }

  // phi(r)/r^2 -> infinity, certified as growth on the tail plus a factor 10
  // between r_max/10 and r_max.
  auto q = [&](double r) { return profile.log_phi(r) - 2.0 * std::log(r); };
  bool q_increasing = true;
  for (std::size_t i = q0 + 1; i < n; ++i) {
    if (!(q(grid[i]) > q(grid[i - 1]))) q_increasing = false;
  }
  d.phi_over_r2_diverges =
      q_increasing && q(r_max) >= std::log(10.0) + q(r_max / 10.0) - 1e-12;
  d.notes.push_back("limits certified on the window [1, " + std::to_string(r_max) + "]");
  return d;
}

DerivativeNormFlags derivative_norm_admissible(const WeightProfile& profile, double p, double r_max) {
  if (!(p >= 1.0)) throw std::invalid_argument("derivative_norm_admissible: p must be >= 1");
  DerivativeNormFlags flags;
  const int n = 64;
  const auto grid = log_grid(1.0, r_max, n);
  flags.derivative_nonzero = true;
  for (double r : grid) {
    if (!(profile.log_phi_prime(r) > -kInf)) flags.derivative_nonzero = false;
  }
  const double phi_max = std::exp(profile.log_phi(r_max));
  flags.decay_log_value = std::log(r_max) - p * phi_max - profile.log_phi_prime(r_max);
  flags.decay = flags.decay_log_value < std::log(1e-12);

  const std::size_t q0 = 3 * (grid.size() - 1) / 4;
  flags.liminf = kInf;
  flags.limsup = -kInf;
  for (std::size_t i = q0; i < grid.size(); ++i) {
    const double g = profile.derivative_ratio_slope(grid[i]);
    flags.liminf = std::min(flags.liminf, g);
    flags.limsup = std::max(flags.limsup, g);
  }
  flags.bracket_below_p = std::isfinite(flags.liminf) && std::isfinite(flags.limsup) &&
                          flags.limsup < p;
  return flags;
}

}  // namespace fockde
