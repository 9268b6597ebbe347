#pragma once

// Entire functions as small expression trees over power series and a few
// closed forms. Nodes are immutable and shared, so copies are cheap.

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace fockde {

using cplx = std::complex<double>;

enum class NamedKind { exp_scaled, cos, sin, monomial, constant };

class EntireFunction;

/// Truncated Taylor series. When `polynomial` is set the coefficient list is
/// the whole function; otherwise evaluation certifies the truncation.
struct SeriesRep {
  std::vector<cplx> coeffs;
  double tail_tol = 1e-12;
  bool polynomial = false;
  std::vector<double> log_abs;  // log|a_n|, cached for the certificate
};

struct NamedRep {
  NamedKind kind = NamedKind::constant;
  cplx c{0.0, 0.0};  // exp_scaled: e^{cz}; constant: value
  int m = 0;         // monomial degree
};

struct SumRep {
  std::vector<EntireFunction> terms;
};

struct ProductRep;
struct ScaledRep;

class EntireFunction {
 public:
  using Rep = std::variant<SeriesRep, NamedRep, SumRep, std::shared_ptr<const ProductRep>,
                           std::shared_ptr<const ScaledRep>>;

  /// The zero function.
  EntireFunction();

  static EntireFunction polynomial(std::vector<cplx> coeffs);
  static EntireFunction power_series(std::vector<cplx> coeffs, double tail_tol = 1e-12);
  static EntireFunction exp_scaled(cplx c);
  static EntireFunction cos();
  static EntireFunction sin();
  static EntireFunction monomial(int m);
  static EntireFunction constant(cplx c);
  static EntireFunction sum(std::vector<EntireFunction> terms);
  static EntireFunction product(EntireFunction lhs, EntireFunction rhs);
  static EntireFunction scaled(cplx factor, EntireFunction inner);

  const Rep& rep() const { return *rep_; }

  /// Throws std::domain_error("series truncation insufficient at |z|") when a
  /// truncated power series cannot certify its tail at |z|.
  cplx operator()(cplx z) const;

 private:
  explicit EntireFunction(Rep rep);
  std::shared_ptr<const Rep> rep_;
};

struct ProductRep {
  EntireFunction lhs;
  EntireFunction rhs;
};

struct ScaledRep {
  cplx factor;
  EntireFunction inner;
};

EntireFunction operator+(const EntireFunction& a, const EntireFunction& b);
EntireFunction operator-(const EntireFunction& a, const EntireFunction& b);
EntireFunction operator*(const EntireFunction& a, const EntireFunction& b);
EntireFunction operator*(cplx c, const EntireFunction& f);

inline cplx evaluate(const EntireFunction& f, cplx z) { return f(z); }

EntireFunction differentiate(const EntireFunction& f, int order = 1);

/// order-fold primitive with every integration constant zero.
EntireFunction antiderivative(const EntireFunction& f, int order = 1);

/// Cauchy product truncated at degree n; coefficient n sums a_i b_{n-i} in
/// ascending i.
std::vector<cplx> series_multiply(std::span<const cplx> a, std::span<const cplx> b, int n);

/// Taylor coefficients a_0..a_n at the origin.
std::vector<cplx> taylor_coefficients(const EntireFunction& f, int n);

/// Exact coefficient list when every leaf is polynomial (trailing zeros
/// stripped; empty for the zero function), nullopt otherwise.
std::optional<std::vector<cplx>> polynomial_coefficients(const EntireFunction& f);

/// Degree of a polynomial, -1 for the zero polynomial, nullopt if the
/// representation is not polynomial.
std::optional<int> polynomial_degree(const EntireFunction& f);

bool is_zero(const EntireFunction& f);
bool is_constant(const EntireFunction& f);

/// max over |z| = r: grid scan refined around the top local maxima.
double max_modulus(const EntireFunction& f, double r, int n_theta = 256);

/// log+ of the maximum modulus, the stand-in for the Nevanlinna characteristic.
double nevanlinna_proxy(const EntireFunction& f, double r, int n_theta = 256);

}  // namespace fockde
