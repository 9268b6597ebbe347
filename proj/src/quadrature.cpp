#include "fockde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fockde {

namespace {

constexpr double kPi = std::numbers::pi;

struct RadialNodes {
  std::vector<double> r;
  std::vector<double> w;
};

RadialNodes radial_nodes(double a, double b, const QuadratureConfig& cfg) {
  RadialNodes out;
  const int n = cfg.n_radial;
  out.r.resize(static_cast<std::size_t>(n));
  out.w.resize(static_cast<std::size_t>(n));
  if (cfg.radial_rule == RadialRule::gauss_legendre_panels) {
    const auto& gl = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < out.r.size(); ++i) {
      out.r[i] = mid + half * gl.nodes[i];
      out.w[i] = half * gl.weights[i];
    }
  } else {
    // Composite trapezoid on n equal cells, midpoint-shifted so r = 0 is never sampled
    // and the panel edges carry no double-counted weight.
    const double h = (b - a) / n;
    for (std::size_t i = 0; i < out.r.size(); ++i) {
      out.r[i] = a + (static_cast<double>(i) + 0.5) * h;
      out.w[i] = h;
    }
  }
  return out;
}

std::vector<cplx> unit_circle(int n) {
  std::vector<cplx> e(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * kPi * j / n);
  return e;
}

double next_width(double a, const QuadratureConfig& cfg) {
  if (cfg.r_max) return std::min(cfg.panel_width, *cfg.r_max - a);
  const double w = a < 8.0 * cfg.panel_width ? cfg.panel_width : a / 8.0;
  return std::min(w, cfg.hard_cap - a);
}

// Accelerating growth of the panel contributions while the current panel
// dominates the running total: the integrand is not going to turn around.
bool accelerating_growth(const std::vector<double>& contrib, double total, double r) {
  const std::size_t k = contrib.size();
  if (k < 4 || r < 2.0) return false;
  const double c0 = contrib[k - 4], c1 = contrib[k - 3], c2 = contrib[k - 2], c3 = contrib[k - 1];
  if (!(c0 > 0.0 && c1 > c0 && c2 > c1 && c3 > c2)) return false;
  const double d1 = std::log(c1) - std::log(c0);
  const double d2 = std::log(c2) - std::log(c1);
  const double d3 = std::log(c3) - std::log(c2);
  return d2 > d1 && d3 > d2 && c3 >= 0.5 * total;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (n_radial < 32) throw std::invalid_argument("QuadratureConfig: n_radial must be >= 32");
  if (n_angular < 64) throw std::invalid_argument("QuadratureConfig: n_angular must be >= 64");
  if (segment_nodes < 16) throw std::invalid_argument("QuadratureConfig: segment_nodes must be >= 16");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: tail_tol must be positive");
  if (!(panel_width > 0.0)) throw std::invalid_argument("QuadratureConfig: panel_width must be positive");
  if (r_max && !(*r_max > 0.0)) throw std::invalid_argument("QuadratureConfig: r_max must be positive");
}

QuadratureConfig QuadratureConfig::scaled(double factor) const {
  QuadratureConfig out = *this;
  out.n_radial = std::max(32, static_cast<int>(std::lround(n_radial * factor)));
  out.n_angular = std::max(64, static_cast<int>(std::lround(n_angular * factor)));
  out.segment_nodes = std::max(16, static_cast<int>(std::lround(segment_nodes * factor)));
  return out;
}

const GaussLegendreRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

PlaneIntegral plane_integral(const RealIntegrand& g, const QuadratureConfig& cfg) {
  cfg.validate();
  PlaneIntegral out;
  const auto circle = unit_circle(cfg.n_angular);
  const double dtheta = 2.0 * kPi / cfg.n_angular;

  std::vector<double> contributions;
  std::vector<double> panel_start;
  std::vector<std::pair<double, double>> profile;  // (r, radial mass at that node)
  double total = 0.0;
  double best_density = -1.0;
  double a = 0.0;
  bool stop = false;

  while (!stop) {
    const double width = next_width(a, cfg);
    if (!(width > 0.0)) break;
    const double b = a + width;
    const auto nodes = radial_nodes(a, b, cfg);
    double panel = 0.0;
    for (std::size_t i = 0; i < nodes.r.size(); ++i) {
      const double r = nodes.r[i];
      double ring = 0.0;
      for (const cplx& e : circle) ring += g(r * e);
      const double density = ring * dtheta * r;
      const double mass = density * nodes.w[i];
      panel += mass;
      profile.emplace_back(r, mass);
      if (density > best_density) {
        best_density = density;
        out.peak_radius = r;
      }
    }
    total += panel;
    contributions.push_back(panel);
    panel_start.push_back(a);
    out.panels += 1;
    out.r_reached = b;
    out.tail_estimate = panel;
    const std::size_t k = contributions.size();
    if (k >= 2 && contributions[k - 2] > 0.0) out.last_ratio = panel / contributions[k - 2];

    if (!std::isfinite(panel) || !std::isfinite(total)) {
      out.diagnostic = "divergent integrand: non-finite panel contribution";
      out.divergence_radius = a;
      out.converged = false;
      stop = true;
      break;
    }
    if (cfg.r_max) {
      if (b >= *cfg.r_max) {
        out.converged = panel <= cfg.tail_tol * total;
        if (!out.converged) out.diagnostic = "tail above tolerance at r_max";
        stop = true;
      }
    } else {
      if (k >= 2 && contributions[k - 1] <= cfg.tail_tol * total &&
          contributions[k - 2] <= cfg.tail_tol * total) {
        out.converged = true;
        stop = true;
      } else if (accelerating_growth(contributions, total, b)) {
        out.diagnostic = "divergent integrand: accelerating growth";
        out.converged = false;
        stop = true;
      } else if (b >= cfg.hard_cap) {
        out.diagnostic = "divergent integrand: no convergence by the hard cap";
        out.converged = false;
        stop = true;
      }
    }
    if (stop && !out.converged && out.divergence_radius == 0.0) {
      // Start of the final run of growing panel contributions.
      std::size_t j = k - 1;
      while (j > 0 && contributions[j] > contributions[j - 1]) --j;
      out.divergence_radius = panel_start[j];
    }
    a = b;
  }
  out.value = total;
  if (total > 0.0) {
    double beyond = 0.0;
    for (const auto& [r, m] : profile) {
      if (r > out.peak_radius) beyond += m;
    }
    out.mass_beyond_peak = beyond / total;
  }
  return out;
}

ComplexPlaneIntegral plane_integral_complex(const ComplexIntegrand& g, const QuadratureConfig& cfg) {
  cfg.validate();
  ComplexPlaneIntegral out;
  const auto circle = unit_circle(cfg.n_angular);
  const double dtheta = 2.0 * kPi / cfg.n_angular;
  std::vector<double> contributions;
  double a = 0.0;
  while (true) {
    const double width = next_width(a, cfg);
    if (!(width > 0.0)) break;
    const double b = a + width;
    const auto nodes = radial_nodes(a, b, cfg);
    cplx panel{0.0, 0.0};
    double panel_abs = 0.0;
    for (std::size_t i = 0; i < nodes.r.size(); ++i) {
      const double r = nodes.r[i];
      cplx ring{0.0, 0.0};
      double ring_abs = 0.0;
      for (const cplx& e : circle) {
        const cplx v = g(r * e);
        ring += v;
        ring_abs += std::abs(v);
      }
      const double f = dtheta * r * nodes.w[i];
      panel += ring * f;
      panel_abs += ring_abs * f;
    }
    out.value += panel;
    out.abs_mass += panel_abs;
    contributions.push_back(panel_abs);
    out.r_reached = b;
    out.tail_estimate = panel_abs;
    const std::size_t k = contributions.size();
    if (!std::isfinite(panel_abs) || !std::isfinite(out.abs_mass)) {
      out.diagnostic = "divergent integrand: non-finite panel contribution";
      out.converged = false;
      break;
    }
    if (cfg.r_max) {
      if (b >= *cfg.r_max) {
        out.converged = panel_abs <= cfg.tail_tol * out.abs_mass;
        if (!out.converged) out.diagnostic = "tail above tolerance at r_max";
        break;
      }
    } else {
      if (k >= 2 && contributions[k - 1] <= cfg.tail_tol * out.abs_mass &&
          contributions[k - 2] <= cfg.tail_tol * out.abs_mass) {
        out.converged = true;
        break;
      }
      if (accelerating_growth(contributions, out.abs_mass, b)) {
        out.diagnostic = "divergent integrand: accelerating growth";
        break;
      }
      if (b >= cfg.hard_cap) {
        out.diagnostic = "divergent integrand: no convergence by the hard cap";
        break;
      }
    }
    a = b;
  }
  return out;
}

VectorPlaneIntegral plane_integral_vector(const VectorIntegrand& g, int dim, const QuadratureConfig& cfg) {
  cfg.validate();
  if (dim < 1) throw std::invalid_argument("plane_integral_vector: dim must be >= 1");
  const auto n = static_cast<std::size_t>(dim);
  VectorPlaneIntegral out;
  out.value.assign(n, cplx{0.0, 0.0});
  const auto circle = unit_circle(cfg.n_angular);
  const double dtheta = 2.0 * kPi / cfg.n_angular;
  std::vector<double> contributions;
  std::vector<cplx> sample(n), ring(n), panel(n);
  double a = 0.0;
  while (true) {
    const double width = next_width(a, cfg);
    if (!(width > 0.0)) break;
    const double b = a + width;
    const auto nodes = radial_nodes(a, b, cfg);
    std::fill(panel.begin(), panel.end(), cplx{0.0, 0.0});
    double panel_abs = 0.0;
    for (std::size_t i = 0; i < nodes.r.size(); ++i) {
      const double r = nodes.r[i];
      std::fill(ring.begin(), ring.end(), cplx{0.0, 0.0});
      double ring_abs = 0.0;
      for (const cplx& e : circle) {
        g(r * e, sample);
        for (std::size_t c = 0; c < n; ++c) {
          ring[c] += sample[c];
          ring_abs += std::abs(sample[c]);
        }
      }
      const double f = dtheta * r * nodes.w[i];
      for (std::size_t c = 0; c < n; ++c) panel[c] += ring[c] * f;
      panel_abs += ring_abs * f;
    }
    for (std::size_t c = 0; c < n; ++c) out.value[c] += panel[c];
    out.abs_mass += panel_abs;
    contributions.push_back(panel_abs);
    out.r_reached = b;
    out.tail_estimate = panel_abs;
    const std::size_t k = contributions.size();
    if (!std::isfinite(panel_abs) || !std::isfinite(out.abs_mass)) {
      out.diagnostic = "divergent integrand: non-finite panel contribution";
      out.converged = false;
      break;
    }
    if (cfg.r_max) {
      if (b >= *cfg.r_max) {
        out.converged = panel_abs <= cfg.tail_tol * out.abs_mass;
        if (!out.converged) out.diagnostic = "tail above tolerance at r_max";
        break;
      }
    } else {
      if (k >= 2 && contributions[k - 1] <= cfg.tail_tol * out.abs_mass &&
          contributions[k - 2] <= cfg.tail_tol * out.abs_mass) {
        out.converged = true;
        break;
      }
      if (accelerating_growth(contributions, out.abs_mass, b)) {
        out.diagnostic = "divergent integrand: accelerating growth";
        break;
      }
      if (b >= cfg.hard_cap) {
        out.diagnostic = "divergent integrand: no convergence by the hard cap";
        break;
      }
    }
    a = b;
  }
  return out;
}

GridSup grid_sup(const RealIntegrand& g, const QuadratureConfig& cfg) {
  cfg.validate();
  GridSup out;
  out.value = g(cplx{0.0, 0.0});
  out.peak_radius = 0.0;
  const auto circle = unit_circle(cfg.n_angular);
  std::vector<double> maxima;
  int quiet = 0;
  double a = 0.0;
  while (true) {
    const double width = next_width(a, cfg);
    if (!(width > 0.0)) break;
    const double b = a + width;
    const auto nodes = radial_nodes(a, b, cfg);
    double panel_max = 0.0;
    for (double r : nodes.r) {
      for (const cplx& e : circle) {
        const double v = g(r * e);
        if (!std::isfinite(v)) {
          out.diagnostic = "divergent integrand: non-finite weighted sample";
          out.converged = false;
          out.r_reached = b;
          return out;
        }
        if (v > panel_max) panel_max = v;
        if (v > out.value) {
          out.value = v;
          out.peak_radius = r;
        }
      }
    }
    maxima.push_back(panel_max);
    out.r_reached = b;
    if (cfg.r_max) {
      if (b >= *cfg.r_max) {
        out.converged = panel_max <= cfg.tail_tol * out.value;
        if (!out.converged) out.diagnostic = "weighted samples still large at r_max";
        break;
      }
    } else {
      quiet = panel_max <= cfg.tail_tol * out.value ? quiet + 1 : 0;
      if (quiet >= 2) {
        out.converged = true;
        break;
      }
      if (accelerating_growth(maxima, 2.0 * out.value, b)) {
        out.diagnostic = "divergent integrand: weighted samples grow without bound";
        break;
      }
      if (b >= cfg.hard_cap) {
        out.diagnostic = "divergent integrand: no decay by the hard cap";
        break;
      }
    }
    a = b;
  }
  return out;
}

cplx segment_integral(const ComplexIntegrand& h, cplx z, int nodes) {
  const auto& gl = gauss_legendre(nodes);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = 0.5 * (gl.nodes[i] + 1.0);
    acc += (0.5 * gl.weights[i]) * h(t * z);
  }
  return z * acc;
}

void SpaceSpec::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("SpaceSpec: p must be positive");
  if (q != 0.0 && classical()) {
    throw std::invalid_argument("SpaceSpec: q != 0 requires a non-classical weight");
  }
  if (m < 0) throw std::invalid_argument("SpaceSpec: m must be >= 0");
}

namespace {

NormResult from_plane(const PlaneIntegral& pi, double p) {
  NormResult out;
  out.value = std::pow(pi.value, 1.0 / p);
  out.integral = pi.value;
  out.tail_estimate = pi.tail_estimate;
  out.r_reached = pi.r_reached;
  out.converged = pi.converged;
  out.peak_radius = pi.peak_radius;
  out.mass_beyond_peak = pi.mass_beyond_peak;
  out.divergence_radius = pi.divergence_radius;
  out.last_ratio = pi.last_ratio;
  out.quasi_norm = p < 1.0;
  out.diagnostic = pi.diagnostic;
  return out;
}

}  // namespace

NormResult radial_weighted_norm(const ComplexIntegrand& g, double p,
                                const std::function<double(double)>& log_weight,
                                const QuadratureConfig& cfg) {
  if (std::isinf(p)) {
    const auto sup = grid_sup(
        [&](cplx z) {
          const double m = std::abs(g(z));
          if (m == 0.0) return 0.0;
          return std::exp(std::log(m) + log_weight(std::abs(z)));
        },
        cfg);
    NormResult out;
    out.value = sup.value;
    out.integral = sup.value;
    out.r_reached = sup.r_reached;
    out.converged = sup.converged;
    out.peak_radius = sup.peak_radius;
    out.diagnostic = sup.diagnostic;
    out.divergence_radius = sup.converged ? 0.0 : sup.r_reached;
    return out;
  }
  const auto pi = plane_integral(
      [&](cplx z) {
        const double m = std::abs(g(z));
        if (m == 0.0) return 0.0;
        return std::exp(p * std::log(m) + log_weight(std::abs(z)));
      },
      cfg);
  return from_plane(pi, p);
}

NormResult weighted_norm(const ComplexIntegrand& f, const SpaceSpec& space, const QuadratureConfig& cfg) {
  space.validate();
  const WeightProfile& w = space.weight;
  const double p = space.p;
  const double q = space.q;
  if (std::isinf(p)) {
    return radial_weighted_norm(f, p, [&](double r) { return -w.phi(r); }, cfg);
  }
  return radial_weighted_norm(
      f, p,
      [&](double r) {
        double lw = -p * w.phi(r);
        if (q != 0.0) lw += q * w.log_phi(r);
        return lw;
      },
      cfg);
}

NormResult weighted_norm(const EntireFunction& f, const SpaceSpec& space, const QuadratureConfig& cfg) {
  space.validate();
  if (space.m == 0) return weighted_norm([&](cplx z) { return f(z); }, space, cfg);
  SpaceSpec base = space;
  base.m = 0;
  NormResult total;
  total.converged = true;
  for (int a = 0; a <= space.m; ++a) {
    const EntireFunction d = differentiate(f, a);
    const NormResult part = weighted_norm([&](cplx z) { return d(z); }, base, cfg);
    if (a == 0) {
      total.peak_radius = part.peak_radius;
      total.mass_beyond_peak = part.mass_beyond_peak;
    }
    total.value += part.value;
    total.integral += part.integral;
    total.tail_estimate += part.tail_estimate;
    total.r_reached = std::max(total.r_reached, part.r_reached);
    total.quasi_norm = part.quasi_norm;
    if (!part.converged) {
      total.converged = false;
      total.divergence_radius = part.divergence_radius;
      total.last_ratio = part.last_ratio;
      total.diagnostic = "derivative " + std::to_string(a) + ": " + part.diagnostic;
    }
  }
  return total;
}

FockSobolevNorms fock_sobolev_norm(const EntireFunction& f, double p, int m, const QuadratureConfig& cfg) {
  if (m < 1) throw std::invalid_argument("fock_sobolev_norm: m must be >= 1");
  SpaceSpec space;
  space.p = p;
  space.m = m;
  const NormResult direct = weighted_norm(f, space, cfg);
  space.m = 0;
  const EntireFunction shifted = EntireFunction::monomial(m) * f;
  const NormResult equiv = weighted_norm(shifted, space, cfg);
  return {direct.value, equiv.value, direct.converged && equiv.converged};
}

EquivalenceRatio fock_derivative_equivalence(const EntireFunction& f, double p, int m,
                                           const QuadratureConfig& cfg) {
  if (m < 1) throw std::invalid_argument("fock_derivative_equivalence: m must be >= 1");
  EquivalenceRatio out;
  SpaceSpec space;
  space.p = p;
  const NormResult norm = weighted_norm(f, space, cfg);
  double point_terms = 0.0;
  for (int a = 0; a < m; ++a) point_terms += std::abs(differentiate(f, a)(cplx{0.0, 0.0}));
  const EntireFunction dm = differentiate(f, m);
  const NormResult tail = radial_weighted_norm(
      [&](cplx z) { return dm(z); }, p,
      [&](double r) { return -p * (0.5 * r * r + m * std::log1p(r)); }, cfg);
  out.middle = point_terms + tail.value;
  out.norm = norm.value;
  out.ratio = out.middle / out.norm;
  out.converged = norm.converged && tail.converged;
  return out;
}

}  // namespace fockde
