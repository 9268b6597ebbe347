#pragma once

// Reproducing kernel of F^2_phi built from the orthogonal monomials
// z^n / delta_n, with delta_n^2 = 2 pi int_0^inf r^{2n+1} e^{-2 phi(r)} dr.
//
// The kernel is stored in its Hermitian form K(z, w) = sum (z conj(w))^n / delta_n^2,
// holomorphic in z, so that f(w) = int f(z) K(w, z) e^{-2 phi} dm.

#include <vector>

#include "fockde/entire.hpp"
#include "fockde/quadrature.hpp"
#include "fockde/weights.hpp"

namespace fockde {

struct KernelBasis {
  WeightProfile profile = WeightProfile::classical_gaussian();
  int N = 0;
  std::vector<double> log_delta_sq;  // n = 0..N
  // step[n] = delta_{n-1}^2 / delta_n^2 for n >= 1; step[0] = 1 / delta_0^2.
  std::vector<double> step;
  double tail_ratio = 1e-14;  // last kernel term must stay below this times the sum

  double delta_sq(int n) const;
};

/// log of int_0^inf r^{2n+1} e^{-2 phi(r)} dr (without the 2 pi), by
/// Gauss-Legendre panels of the local Gaussian width laid outward from the
/// peak of the integrand. Throws std::domain_error("moment diverges at n")
/// when the integrand has no interior peak.
double log_radial_moment(const WeightProfile& profile, int n);

KernelBasis compute_deltas(const WeightProfile& profile, int N);

/// Truncated kernel. Throws std::domain_error("kernel truncation
/// insufficient") when the last term exceeds tail_ratio times the sum.
cplx kernel_eval(const KernelBasis& basis, cplx z, cplx w);

/// Same sum without the certificate; used inside quadratures where the far
/// tail is suppressed by the weight anyway.
cplx kernel_eval_truncated(const KernelBasis& basis, cplx z, cplx w);

/// zeta -> conj(d/d eta K(eta, zeta)) = sum_{n>=1} n conj(eta)^{n-1} zeta^n / delta_n^2,
/// returned as a polynomial of degree N.
EntireFunction kernel_slot_derivative(const KernelBasis& basis, cplx eta);

/// zeta -> sum_n (zeta conj(eta))^n / delta_n^2, the kernel with eta in the
/// conjugated slot, as a polynomial of degree N.
EntireFunction kernel_in_first_slot(const KernelBasis& basis, cplx eta);

struct ReproduceResult {
  cplx reproduced;
  cplx reference;
  double rel_err = 0.0;
  bool converged = false;
};

/// int f(z) K(w, z) e^{-2 phi(|z|)} dm against f(w). f must be a polynomial of
/// degree at most N - 2.
ReproduceResult reproduce_check(const KernelBasis& basis, const EntireFunction& f, cplx w,
                                const QuadratureConfig& cfg);

struct PairingResult {
  cplx lhs;
  cplx rhs;
  double rel_err = 0.0;
  bool converged = false;
};

/// lhs = int f conj(g) e^{-2 phi} dm;
/// rhs = f(0) conj(g(0)) + int f' conj(g') (1 + phi')^{-2} e^{-2 phi} dm.
/// Both raw values are reported; no normalisation is applied.
PairingResult inner_product_identity_check(const KernelBasis& basis, const EntireFunction& f,
                                           const EntireFunction& g, const QuadratureConfig& cfg);

struct WeightedEquivalence {
  double ratio = 0.0;   // middle / norm_p
  double middle = 0.0;  // |f(0)|^p + int |f'|^p e^{-p phi} (1 + phi')^{-p} dm
  double norm_p = 0.0;  // ||f||_{p,phi}^p
  bool converged = false;
};

/// Derivative form of the weighted norm against the norm itself. Throws
/// std::domain_error("derivative norm-equivalence hypotheses fail") when
/// the weight fails the admissibility checks for this p.
WeightedEquivalence weighted_derivative_equivalence(const WeightProfile& profile,
                                                    const EntireFunction& f, double p,
                                                    const QuadratureConfig& cfg);

}  // namespace fockde
