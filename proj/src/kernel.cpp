#include "fockde/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fockde {

namespace {

constexpr int kMomentNodes = 64;
constexpr int kMaxMomentPanels = 20000;

// log(1 + e^x) without overflow.
double log1p_exp(double x) {
  if (x > 35.0) return x;
  return std::log1p(std::exp(x));
}

// Integrand exponent (2n+1) log r - 2 phi(r).
double moment_exponent(const WeightProfile& profile, int n, double r) {
  if (r <= 0.0) return -std::numeric_limits<double>::infinity();
  const double two_phi = 2.0 * profile.phi(r);
  return (2.0 * n + 1.0) * std::log(r) - two_phi;
}

// Peak of r^{2n+1} e^{-2 phi}: the root of 2 r phi'(r) = 2n + 1, which is
// unique because r phi'(r) increases for every built-in kind.
double moment_peak(const WeightProfile& profile, int n) {
  const double target = std::log(2.0 * n + 1.0);
  auto h = [&](double r) { return std::log(2.0 * r) + profile.log_phi_prime(r) - target; };
  double hi = 1.0;
  while (!(h(hi) > 0.0)) {
    hi *= 2.0;
    if (hi > 1e8) throw std::domain_error("moment diverges at n = " + std::to_string(n));
  }
  double lo = hi * 0.5;
  while (!(h(lo) < 0.0)) {
    lo *= 0.5;
    if (lo < 1e-300) return lo;
  }
  for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double KernelBasis::delta_sq(int n) const {
  if (n < 0 || n > N) throw std::out_of_range("KernelBasis::delta_sq: index out of range");
  return std::exp(log_delta_sq[static_cast<std::size_t>(n)]);
}

double log_radial_moment(const WeightProfile& profile, int n) {
  if (n < 0) throw std::invalid_argument("log_radial_moment: n must be >= 0");
  const double peak = moment_peak(profile, n);
  const double l_peak = moment_exponent(profile, n, peak);
  if (!std::isfinite(l_peak)) throw std::domain_error("moment diverges at n = " + std::to_string(n));

  const double curvature = (2.0 * n + 1.0) / (peak * peak) + 2.0 * profile.phi_second(peak);
  double sigma = (std::isfinite(curvature) && curvature > 0.0) ? 1.0 / std::sqrt(curvature) : peak;
  sigma = std::min(sigma, std::max(peak, 1.0));

  const auto& gl = gauss_legendre(kMomentNodes);
  auto panel = [&](double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double l = moment_exponent(profile, n, mid + half * gl.nodes[i]) - l_peak;
      s += gl.weights[i] * std::exp(l);
    }
    return half * s;
  };

  // Right of the peak, then left of it down to the origin; each side stops
  // after two consecutive negligible panels.
  double right = 0.0;
  int quiet = 0;
  double a = peak;
  for (int k = 0; quiet < 2; ++k) {
    if (k >= kMaxMomentPanels) throw std::domain_error("moment diverges at n = " + std::to_string(n));
    const double c = panel(a, a + sigma);
    if (!std::isfinite(c)) throw std::domain_error("moment diverges at n = " + std::to_string(n));
    right += c;
    quiet = c <= 1e-18 * right ? quiet + 1 : 0;
    a += sigma;
  }
  double left = 0.0;
  quiet = 0;
  double b = peak;
  while (b > 0.0 && quiet < 2) {
    const double lo = std::max(0.0, b - sigma);
    const double c = panel(lo, b);
    left += c;
    quiet = c <= 1e-18 * (left + right) ? quiet + 1 : 0;
    b = lo;
  }
  return l_peak + std::log(left + right);
}

KernelBasis compute_deltas(const WeightProfile& profile, int N) {
  if (N < 0) throw std::invalid_argument("compute_deltas: N must be >= 0");
  KernelBasis basis;
  basis.profile = profile;
  basis.N = N;
  basis.log_delta_sq.resize(static_cast<std::size_t>(N) + 1);
  basis.step.resize(static_cast<std::size_t>(N) + 1);
  const double log_two_pi = std::log(2.0 * std::numbers::pi);
  for (int n = 0; n <= N; ++n) {
    basis.log_delta_sq[static_cast<std::size_t>(n)] = log_two_pi + log_radial_moment(profile, n);
  }
  basis.step[0] = std::exp(-basis.log_delta_sq[0]);
  for (std::size_t n = 1; n < basis.step.size(); ++n) {
    basis.step[n] = std::exp(basis.log_delta_sq[n - 1] - basis.log_delta_sq[n]);
  }
  return basis;
}

cplx kernel_eval_truncated(const KernelBasis& basis, cplx z, cplx w) {
  const cplx x = z * std::conj(w);
  cplx term = basis.step[0];
  cplx sum = term;
  for (std::size_t n = 1; n < basis.step.size(); ++n) {
    term = term * x * basis.step[n];
    sum += term;
  }
  return sum;
}

cplx kernel_eval(const KernelBasis& basis, cplx z, cplx w) {
  const cplx x = z * std::conj(w);
  cplx term = basis.step[0];
  cplx sum = term;
  for (std::size_t n = 1; n < basis.step.size(); ++n) {
    term = term * x * basis.step[n];
    sum += term;
  }
  if (!(std::abs(term) <= basis.tail_ratio * std::abs(sum))) {
    throw std::domain_error("kernel truncation insufficient");
  }
  return sum;
}

EntireFunction kernel_slot_derivative(const KernelBasis& basis, cplx eta) {
  std::vector<cplx> c(static_cast<std::size_t>(basis.N) + 1, cplx{0.0, 0.0});
  if (basis.N >= 1) {
    const cplx ce = std::conj(eta);
    cplx t = basis.step[0] * basis.step[1];  // 1 / delta_1^2
    c[1] = t;
    for (std::size_t n = 2; n < c.size(); ++n) {
      t = t * ce * basis.step[n];
      c[n] = static_cast<double>(n) * t;
    }
  }
  return EntireFunction::polynomial(std::move(c));
}

EntireFunction kernel_in_first_slot(const KernelBasis& basis, cplx eta) {
  std::vector<cplx> c(static_cast<std::size_t>(basis.N) + 1);
  const cplx ce = std::conj(eta);
  cplx t = basis.step[0];
  c[0] = t;
  for (std::size_t n = 1; n < c.size(); ++n) {
    t = t * ce * basis.step[n];
    c[n] = t;
  }
  return EntireFunction::polynomial(std::move(c));
}

ReproduceResult reproduce_check(const KernelBasis& basis, const EntireFunction& f, cplx w,
                                const QuadratureConfig& cfg) {
  const auto deg = polynomial_degree(f);
  if (!deg) throw std::invalid_argument("reproduce_check: f must be a polynomial");
  if (*deg > basis.N - 2) throw std::invalid_argument("reproduce_check: degree of f exceeds N - 2");
  const WeightProfile& profile = basis.profile;
  auto integrand = [&](cplx z) -> cplx {
    const double weight = std::exp(-2.0 * profile.phi(std::abs(z)));
    if (weight == 0.0) return {0.0, 0.0};
    return f(z) * kernel_eval_truncated(basis, w, z) * weight;
  };
  const auto integral = plane_integral_complex(integrand, cfg);
  ReproduceResult out;
  out.reproduced = integral.value;
  out.reference = f(w);
  out.converged = integral.converged;
  const double diff = std::abs(out.reproduced - out.reference);
  const double ref = std::abs(out.reference);
  out.rel_err = ref > 0.0 ? diff / ref : diff;
  return out;
}

PairingResult inner_product_identity_check(const KernelBasis& basis, const EntireFunction& f,
                                           const EntireFunction& g, const QuadratureConfig& cfg) {
  const WeightProfile& profile = basis.profile;
  const EntireFunction df = differentiate(f);
  const EntireFunction dg = differentiate(g);
  auto lhs_integrand = [&](cplx z) -> cplx {
    const double weight = std::exp(-2.0 * profile.phi(std::abs(z)));
    if (weight == 0.0) return {0.0, 0.0};
    return f(z) * std::conj(g(z)) * weight;
  };
  auto rhs_integrand = [&](cplx z) -> cplx {
    const double r = std::abs(z);
    const double log_w = -2.0 * profile.phi(r) - 2.0 * log1p_exp(profile.log_phi_prime(r));
    const double weight = std::exp(log_w);
    if (weight == 0.0) return {0.0, 0.0};
    return df(z) * std::conj(dg(z)) * weight;
  };
  const auto lhs = plane_integral_complex(lhs_integrand, cfg);
  const auto rhs = plane_integral_complex(rhs_integrand, cfg);
  PairingResult out;
  out.lhs = lhs.value;
  out.rhs = f(cplx{0.0, 0.0}) * std::conj(g(cplx{0.0, 0.0})) + rhs.value;
  out.converged = lhs.converged && rhs.converged;
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.rel_err = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
  return out;
}

WeightedEquivalence weighted_derivative_equivalence(const WeightProfile& profile,
                                                    const EntireFunction& f, double p,
                                                    const QuadratureConfig& cfg) {
  if (!derivative_norm_admissible(profile, p, 50.0).all()) {
    throw std::domain_error("derivative norm-equivalence hypotheses fail");
  }
  SpaceSpec space;
  space.weight = profile;
  space.p = p;
  const NormResult norm = weighted_norm(f, space, cfg);

  const EntireFunction df = differentiate(f);
  auto log_weight = [&](double r) {
    return -p * profile.phi(r) - p * log1p_exp(profile.log_phi_prime(r));
  };
  const NormResult deriv = radial_weighted_norm([&](cplx z) { return df(z); }, p, log_weight, cfg);

  WeightedEquivalence out;
  out.norm_p = std::pow(norm.value, p);
  out.middle = std::pow(std::abs(f(cplx{0.0, 0.0})), p) + std::pow(deriv.value, p);
  out.ratio = out.middle / out.norm_p;
  out.converged = norm.converged && deriv.converged;
  return out;
}

}  // namespace fockde
