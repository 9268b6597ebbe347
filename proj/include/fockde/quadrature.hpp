#pragma once

// Planar and segment quadrature, and the weighted Fock-type norms built on
// them. Every sum runs in a fixed order (ascending radius, then ascending
// angle) so that equal configurations give bit-identical results.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fockde/entire.hpp"
#include "fockde/weights.hpp"

namespace fockde {

enum class RadialRule { gauss_legendre_panels, trapezoid_geometric };

struct QuadratureConfig {
  int n_radial = 256;                 // nodes per radial panel
  int n_angular = 256;
  std::optional<double> r_max;        // nullopt: panels appended until the tail is negligible
  RadialRule radial_rule = RadialRule::gauss_legendre_panels;
  double tail_tol = 1e-10;
  int segment_nodes = 64;
  double panel_width = 1.0;           // panel width below 8 * panel_width; r/8 beyond
  double hard_cap = 1e4;

  /// Throws std::invalid_argument on n_radial < 32, n_angular < 64 or
  /// segment_nodes < 16.
  void validate() const;
  /// Copy with node counts multiplied by `factor` (clamped to the minimums).
  QuadratureConfig scaled(double factor) const;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

struct PlaneIntegral {
  double value = 0.0;
  double tail_estimate = 0.0;
  bool converged = false;
  double peak_radius = 0.0;
  double mass_beyond_peak = 0.0;
  double r_reached = 0.0;
  double divergence_radius = 0.0;  // where the radial integrand stopped decaying
  double last_ratio = 0.0;         // last panel contribution / previous one
  int panels = 0;
  std::string diagnostic;
};

struct ComplexPlaneIntegral {
  cplx value{0.0, 0.0};
  double abs_mass = 0.0;  // integral of |g|, drives the stopping rule
  double tail_estimate = 0.0;
  bool converged = false;
  double r_reached = 0.0;
  std::string diagnostic;
};

using RealIntegrand = std::function<double(cplx)>;
using ComplexIntegrand = std::function<cplx(cplx)>;

/// Integral of a nonnegative g over the plane with respect to area measure.
PlaneIntegral plane_integral(const RealIntegrand& g, const QuadratureConfig& cfg);

/// Same panels for a complex integrand; convergence is judged on |g|.
ComplexPlaneIntegral plane_integral_complex(const ComplexIntegrand& g, const QuadratureConfig& cfg);

struct VectorPlaneIntegral {
  std::vector<cplx> value;
  double abs_mass = 0.0;  // integral of sum_i |g_i|
  double tail_estimate = 0.0;
  bool converged = false;
  double r_reached = 0.0;
  std::string diagnostic;
};

/// Fills out[0..dim) with the integrand components at z.
using VectorIntegrand = std::function<void(cplx z, std::span<cplx> out)>;

/// Componentwise plane integral on the shared panels; convergence is judged
/// on the summed moduli.
VectorPlaneIntegral plane_integral_vector(const VectorIntegrand& g, int dim, const QuadratureConfig& cfg);

struct GridSup {
  double value = 0.0;
  double peak_radius = 0.0;
  bool converged = false;
  double r_reached = 0.0;
  std::string diagnostic;
};

/// Supremum of a nonnegative g over the origin and the polar quadrature grid,
/// extended until panel maxima stay below tail_tol * running max.
GridSup grid_sup(const RealIntegrand& g, const QuadratureConfig& cfg);

/// Straight-segment integral from 0 to z: z * sum_i w_i h(t_i z).
cplx segment_integral(const ComplexIntegrand& h, cplx z, int nodes);

/// Which space a norm lives in. The default weight is the classical r^2/2.
struct SpaceSpec {
  WeightProfile weight = WeightProfile::classical_gaussian();
  double p = 2.0;  // +inf selects the sup norm
  double q = 0.0;  // power of phi in the density
  int m = 0;       // Sobolev order: sum of the norms of f, f', ..., f^(m)

  bool classical() const { return weight.kind() == WeightKind::classical_gaussian; }
  void validate() const;
};

struct NormResult {
  double value = 0.0;  // the norm itself, not its p-th power
  double integral = 0.0;       // the p-th power (the raw plane integral); sup for p = inf
  double tail_estimate = 0.0;  // last panel contribution to `integral`
  double r_reached = 0.0;
  bool converged = false;
  double peak_radius = 0.0;
  double mass_beyond_peak = 0.0;
  double divergence_radius = 0.0;
  double last_ratio = 0.0;
  bool quasi_norm = false;  // 0 < p < 1
  std::string diagnostic;
};

/// Weighted norm of a pointwise function; `space.m` is ignored here.
NormResult weighted_norm(const ComplexIntegrand& f, const SpaceSpec& space, const QuadratureConfig& cfg);

/// Weighted norm of an entire function, summing derivative norms when
/// space.m > 0.
NormResult weighted_norm(const EntireFunction& f, const SpaceSpec& space, const QuadratureConfig& cfg);

/// (integral of |g|^p exp(log_weight(|z|)) dm)^{1/p}, evaluated in the log domain.
NormResult radial_weighted_norm(const ComplexIntegrand& g, double p,
                                const std::function<double(double)>& log_weight,
                                const QuadratureConfig& cfg);

struct FockSobolevNorms {
  double direct = 0.0;      // sum of classical norms of f, ..., f^(m)
  double equivalent = 0.0;  // classical norm of z^m f
  bool converged = false;
};

FockSobolevNorms fock_sobolev_norm(const EntireFunction& f, double p, int m, const QuadratureConfig& cfg);

struct EquivalenceRatio {
  double ratio = 0.0;
  double middle = 0.0;
  double norm = 0.0;
  bool converged = false;
};

/// Derivative form of the classical Fock norm: sum_{a<m} |f^(a)(0)| plus the
/// p-norm of f^(m) (1+|z|)^{-m} e^{-|z|^2/2}, divided by ||f||_p.
EquivalenceRatio fock_derivative_equivalence(const EntireFunction& f, double p, int m,
                                           const QuadratureConfig& cfg);

}  // namespace fockde
