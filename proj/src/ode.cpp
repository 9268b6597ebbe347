#include "fockde/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fockde {

namespace {

using State = std::vector<cplx>;

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5 = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                       -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kB4 = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                       -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

constexpr double kMinStep = 1e-12;

double inf_norm(const State& w) {
  double m = 0.0;
  for (const auto& x : w) m = std::max(m, std::abs(x));
  return m;
}

class RaySystem {
 public:
  RaySystem(const LDEProblem& problem, double theta)
      : p_(problem), dir_(std::polar(1.0, theta)), homogeneous_(problem.homogeneous()) {}

  void operator()(double t, const State& w, State& dw) const {
    const cplx z = t * dir_;
    const int k = p_.k;
    for (int j = 0; j + 1 < k; ++j) dw[static_cast<std::size_t>(j)] = dir_ * w[static_cast<std::size_t>(j + 1)];
    cplx top = homogeneous_ ? cplx{0.0, 0.0} : p_.forcing(z);
    for (int j = 0; j < k; ++j) {
      const auto& a = p_.A[static_cast<std::size_t>(j)];
      if (is_zero(a)) continue;
      top -= a(z) * w[static_cast<std::size_t>(j)];
    }
    dw[static_cast<std::size_t>(k - 1)] = dir_ * top;
  }

 private:
  const LDEProblem& p_;
  cplx dir_;
  bool homogeneous_;
};

}  // namespace

void LDEProblem::validate() const {
  if (k < 1) throw std::invalid_argument("problem order must be >= 1");
  if (static_cast<int>(A.size()) != k) {
    throw std::invalid_argument("problem needs exactly k coefficients A_0..A_{k-1}");
  }
  if (static_cast<int>(initial.size()) != k) {
    throw std::invalid_argument("problem needs exactly k initial values");
  }
}

int LDEProblem::nonzero_coefficients() const {
  int n = 0;
  for (const auto& a : A) n += is_zero(a) ? 0 : 1;
  return n;
}

LDEProblem second_order_homogeneous(EntireFunction a, cplx f0, cplx f1) {
  LDEProblem p;
  p.k = 2;
  p.A = {std::move(a), EntireFunction()};
  p.initial = {f0, f1};
  return p;
}

std::vector<cplx> taylor_solution_coefficients(const LDEProblem& problem, int N) {
  problem.validate();
  const int k = problem.k;
  if (N < k) throw std::invalid_argument("taylor_solve: N must be >= k");
  const auto uN = static_cast<std::size_t>(N);

  std::vector<std::vector<cplx>> A(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const auto& aj = problem.A[static_cast<std::size_t>(j)];
    if (!is_zero(aj)) A[static_cast<std::size_t>(j)] = taylor_coefficients(aj, N);
  }
  const std::vector<cplx> F = problem.homogeneous() ? std::vector<cplx>(uN + 1, cplx{0.0, 0.0})
                                                    : taylor_coefficients(problem.forcing, N);

  std::vector<cplx> a(uN + 1, cplx{0.0, 0.0});
  double fact = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) fact *= j;
    a[static_cast<std::size_t>(j)] = problem.initial[static_cast<std::size_t>(j)] / fact;
  }

  // d[j][m] = coefficient m of f^(j) = a_{m+j} (m+1)...(m+j), filled as a grows.
  std::vector<std::vector<cplx>> d(static_cast<std::size_t>(k), std::vector<cplx>(uN + 1));
  auto fill_derivative_coeff = [&](int j, int m) {
    double scale = 1.0;
    for (int i = 1; i <= j; ++i) scale *= static_cast<double>(m + i);
    d[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = a[static_cast<std::size_t>(m + j)] * scale;
  };
  for (int j = 0; j < k; ++j) {
    for (int m = 0; m + j < k; ++m) fill_derivative_coeff(j, m);
  }

  for (int n = 0; n + k <= N; ++n) {
    cplx s = F[static_cast<std::size_t>(n)];
    for (int j = 0; j < k; ++j) {
      const auto& aj = A[static_cast<std::size_t>(j)];
      if (aj.empty()) continue;
      const auto& dj = d[static_cast<std::size_t>(j)];
      cplx acc{0.0, 0.0};
      for (int i = 0; i <= n; ++i) acc += aj[static_cast<std::size_t>(i)] * dj[static_cast<std::size_t>(n - i)];
      s -= acc;
    }
    double denom = 1.0;
    for (int i = 1; i <= k; ++i) denom *= static_cast<double>(n + i);
    const cplx next = s / denom;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
      throw std::overflow_error("taylor coefficient overflow at index " + std::to_string(n + k));
    }
    a[static_cast<std::size_t>(n + k)] = next;
    // The new coefficient a_{n+k} completes d[j][n+k-j] for each j.
    for (int j = 0; j < k; ++j) fill_derivative_coeff(j, n + k - j);
  }
  return a;
}

EntireFunction taylor_solve(const LDEProblem& problem, int N, double tail_tol) {
  return EntireFunction::power_series(taylor_solution_coefficients(problem, N), tail_tol);
}

std::vector<double> uniform_radii(double r_max, int count) {
  if (!(r_max > 0.0) || count < 1) throw std::invalid_argument("uniform_radii: bad arguments");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = r_max * (i + 1) / count;
  out.back() = r_max;
  return out;
}

std::vector<double> geometric_radii(double r0, double rho, int count) {
  if (!(r0 > 0.0) || !(rho > 1.0) || count < 1) throw std::invalid_argument("geometric_radii: bad arguments");
  std::vector<double> out(static_cast<std::size_t>(count));
  double r = r0;
  for (int i = 0; i < count; ++i, r *= rho) out[static_cast<std::size_t>(i)] = r;
  return out;
}

RayTrace ray_integrate(const LDEProblem& problem, double theta, std::span<const double> radii,
                       double tol) {
  problem.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("ray_integrate: tol must be positive");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw std::invalid_argument("ray_integrate: radii must be positive and strictly increasing");
    }
  }
  const auto k = static_cast<std::size_t>(problem.k);
  const RaySystem rhs(problem, theta);

  RayTrace trace;
  trace.theta = theta;
  State w(problem.initial.begin(), problem.initial.end());
  std::array<State, 7> K;
  for (auto& s : K) s.assign(k, cplx{0.0, 0.0});
  State tmp(k), y5(k);

  double t = 0.0;
  double h = radii.empty() ? 0.0 : std::min(0.01, radii.front());
  rhs(t, w, K[0]);
  for (double target : radii) {
    while (t < target) {
      bool landing = false;
      if (h >= target - t) {
        h = target - t;
        landing = true;
      }
      for (int s = 1; s < 7; ++s) {
        for (std::size_t i = 0; i < k; ++i) {
          cplx acc{0.0, 0.0};
          for (int q = 0; q < s; ++q) acc += kA[s][q] * K[static_cast<std::size_t>(q)][i];
          tmp[i] = w[i] + h * acc;
        }
        rhs(t + kC[static_cast<std::size_t>(s)] * h, tmp, K[static_cast<std::size_t>(s)]);
      }
      // The last stage was evaluated at the 5th-order solution (FSAL).
      double err = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        cplx e{0.0, 0.0};
        cplx y{0.0, 0.0};
        for (std::size_t q = 0; q < 7; ++q) {
          e += (kB5[q] - kB4[q]) * K[q][i];
          y += kB5[q] * K[q][i];
        }
        y5[i] = w[i] + h * y;
        err = std::max(err, std::abs(h * e));
      }
      // An overflowed state is never accepted; std::max drops NaNs, so test
      // the entries themselves.
      const bool finite = std::all_of(y5.begin(), y5.end(), [](cplx v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
      });
      const double scale = tol * std::max({1.0, inf_norm(w), inf_norm(y5)});
      const double ratio = finite ? err / scale : std::numeric_limits<double>::infinity();
      if (std::isfinite(ratio) && ratio <= 1.0) {
        t = landing ? target : t + h;
        w = y5;
        K[0] = K[6];
        ++trace.steps;
      } else {
        ++trace.rejected;
      }
      const double factor = std::isfinite(ratio) && ratio > 0.0
                                ? std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0)
                                : (std::isfinite(ratio) ? 5.0 : 0.2);
      h *= factor;
      if (h < kMinStep) {
        trace.blowup = true;
        trace.last_radius = t;
        return trace;
      }
    }
    trace.radii.push_back(target);
    trace.values.push_back(w);
    trace.last_radius = target;
  }
  return trace;
}

RayTrace ray_integrate(const LDEProblem& problem, double theta, double r_max, double tol, int samples) {
  const auto radii = uniform_radii(r_max, samples);
  return ray_integrate(problem, theta, radii, tol);
}

GrowthEnvelope growth_envelope(const LDEProblem& problem, double theta,
                               std::span<const double> radii, double R0) {
  problem.validate();
  if (!(R0 > 0.0)) throw std::invalid_argument("growth_envelope: R0 must be positive");
  const int k = problem.k;
  const cplx dir = std::polar(1.0, theta);

  GrowthEnvelope env;
  env.theta = theta;
  env.k_c = problem.nonzero_coefficients();
  env.delta = problem.homogeneous() ? 0.0 : 1.0;
  env.radii.assign(radii.begin(), radii.end());

  auto rate = [&](double s) {
    double m = 0.0;
    for (int j = 0; j < k; ++j) {
      const auto& a = problem.A[static_cast<std::size_t>(j)];
      if (is_zero(a)) continue;
      m = std::max(m, std::pow(std::abs(a(s * dir)), 1.0 / (k - j)));
    }
    return env.delta + env.k_c * m;
  };
  auto forcing_abs = [&](double s) {
    return env.delta == 0.0 ? 0.0 : std::abs(problem.forcing(s * dir));
  };

  // Candidate calibration radii: R0 and every output radius beyond it.
  std::vector<double> calib{R0};
  for (double r : radii) {
    if (r > R0) calib.push_back(r);
  }
  const RayTrace trace = ray_integrate(problem, theta, calib, 1e-12);

  // Breakpoints where the cumulative integral and running max are recorded.
  std::vector<double> bp{0.0};
  bp.insert(bp.end(), calib.begin(), calib.end());
  bp.insert(bp.end(), radii.begin(), radii.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  std::vector<double> integral(bp.size(), 0.0), running_max(bp.size(), 0.0);
  double acc = 0.0;
  double mx = forcing_abs(0.0);
  double prev_rate = rate(0.0);
  running_max[0] = mx;
  for (std::size_t i = 1; i < bp.size(); ++i) {
    const double a = bp[i - 1], b = bp[i];
    const int n = std::max(1, static_cast<int>(std::ceil(200.0 * (b - a))));
    const double h = (b - a) / n;
    for (int s = 1; s <= n; ++s) {
      const double x = s == n ? b : a + s * h;
      const double cur = rate(x);
      acc += 0.5 * h * (prev_rate + cur);
      prev_rate = cur;
      mx = std::max(mx, forcing_abs(x));
    }
    integral[i] = acc;
    running_max[i] = mx;
  }
  auto at = [&](double r) {
    const auto it = std::lower_bound(bp.begin(), bp.end(), r);
    return static_cast<std::size_t>(it - bp.begin());
  };

  double target = 0.0;
  std::size_t used = 0;
  for (; used < trace.values.size(); ++used) {
    const double r = trace.radii[used];
    double l = rate(r);
    if (!(l > 0.0)) l = 1.0;
    double s = 0.0;
    double lp = 1.0;
    for (int j = 0; j < k; ++j) {
      s += std::abs(trace.values[used][static_cast<std::size_t>(j)]) / lp;
      lp *= l;
    }
    if (s > 0.0) {
      target = 2.0 * s;
      break;
    }
  }
  if (target == 0.0) {
    env.R0 = R0;
    env.C = 0.0;
    env.bound.assign(radii.size(), 0.0);
    env.note = "solution vanishes identically on the calibration radii";
    return env;
  }
  env.R0 = trace.radii[used];
  env.R0_shifted = used > 0;
  if (env.R0_shifted) env.note = "calibration radius moved outward to a nonvanishing point";
  if (env.k_c == 0 && env.delta == 0.0) {
    env.note += env.note.empty() ? "" : "; ";
    env.note += "all coefficients vanish: the envelope is constant";
  }

  const std::size_t i0 = at(env.R0);
  const double log_c = std::log(target) - std::log1p(running_max[i0]) - integral[i0];
  env.C = std::exp(log_c);
  env.bound.reserve(radii.size());
  for (double r : radii) {
    const std::size_t i = at(r);
    env.bound.push_back(std::exp(log_c + std::log1p(running_max[i]) + integral[i]));
  }
  return env;
}

Membership membership_probe(const ComplexIntegrand& f, const SpaceSpec& space,
                            const QuadratureConfig& cfg) {
  Membership out;
  try {
    out.norm = weighted_norm(f, space, cfg);
    out.in_space = out.norm.converged;
    out.diagnostic = out.norm.diagnostic;
  } catch (const std::domain_error& e) {
    out.in_space = false;
    out.norm.converged = false;
    out.diagnostic = std::string("evaluation failed: ") + e.what();
  }
  return out;
}

Membership membership_probe(const EntireFunction& f, const SpaceSpec& space,
                            const QuadratureConfig& cfg) {
  Membership out;
  try {
    out.norm = weighted_norm(f, space, cfg);
    out.in_space = out.norm.converged;
    out.diagnostic = out.norm.diagnostic;
  } catch (const std::domain_error& e) {
    out.in_space = false;
    out.norm.converged = false;
    out.diagnostic = std::string("evaluation failed: ") + e.what();
  }
  return out;
}

}  // namespace fockde
