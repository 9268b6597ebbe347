#include "fockde/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fockde {

namespace {

// Degree used when a product of transcendental factors has to be turned
// into a series before integrating it.
constexpr int kProductSeriesDegree = 160;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

SeriesRep make_series(std::vector<cplx> coeffs, double tail_tol, bool polynomial) {
  SeriesRep s;
  s.coeffs = std::move(coeffs);
  s.tail_tol = tail_tol;
  s.polynomial = polynomial;
  s.log_abs.reserve(s.coeffs.size());
  for (const cplx& a : s.coeffs) s.log_abs.push_back(std::log(std::abs(a)));
  return s;
}

cplx horner(const std::vector<cplx>& a, std::size_t n, cplx z) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = n; i-- > 0;) acc = acc * z + a[i];
  return acc;
}

// Checks the truncation certificate at `radius` and returns how many leading
// coefficients need summing there: the trailing terms below 2^-60 of the
// largest one are dropped.
std::size_t certify(const SeriesRep& s, double radius) {
  const std::size_t n = s.coeffs.size();
  if (n < 2 || radius == 0.0) return n;
  const double lr = std::log(radius);
  double biggest = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) biggest = std::max(biggest, s.log_abs[i] + lr * static_cast<double>(i));
  // The tail estimate is the largest of the last n/16 terms (at least two),
  // so that series with gaps between nonzero coefficients cannot pass on
  // trailing zeros.
  const std::size_t window = std::max<std::size_t>(2, n / 16);
  double last = -std::numeric_limits<double>::infinity();
  for (std::size_t i = n - window; i < n; ++i) last = std::max(last, s.log_abs[i] + lr * static_cast<double>(i));
  // max tail term <= tol (1 + max term); the largest term stands in for the
  // largest partial sum.
  const double scale = biggest > 0.0 ? biggest + std::log1p(std::exp(-biggest))
                                     : std::log1p(std::exp(biggest));
  if (!(last <= std::log(s.tail_tol) + scale)) {
    throw std::domain_error("series truncation insufficient at |z| = " + std::to_string(radius));
  }
  const double cut = biggest - 60.0 * std::numbers::ln2;
  std::size_t keep = n;
  while (keep > 1 && s.log_abs[keep - 1] + lr * static_cast<double>(keep - 1) < cut) --keep;
  return keep;
}

}  // namespace

EntireFunction::EntireFunction() : EntireFunction(make_series({}, 1e-12, true)) {}

EntireFunction::EntireFunction(Rep rep) : rep_(std::make_shared<const Rep>(std::move(rep))) {}

EntireFunction EntireFunction::polynomial(std::vector<cplx> coeffs) {
  return EntireFunction(make_series(std::move(coeffs), 0.0, true));
}

EntireFunction EntireFunction::power_series(std::vector<cplx> coeffs, double tail_tol) {
  if (!(tail_tol > 0.0)) throw std::invalid_argument("power series tail_tol must be positive");
  return EntireFunction(make_series(std::move(coeffs), tail_tol, false));
}

EntireFunction EntireFunction::exp_scaled(cplx c) {
  return EntireFunction(NamedRep{NamedKind::exp_scaled, c, 0});
}
EntireFunction EntireFunction::cos() { return EntireFunction(NamedRep{NamedKind::cos, {}, 0}); }
EntireFunction EntireFunction::sin() { return EntireFunction(NamedRep{NamedKind::sin, {}, 0}); }
EntireFunction EntireFunction::monomial(int m) {
  if (m < 0) throw std::invalid_argument("monomial degree must be >= 0");
  return EntireFunction(NamedRep{NamedKind::monomial, {}, m});
}
EntireFunction EntireFunction::constant(cplx c) {
  return EntireFunction(NamedRep{NamedKind::constant, c, 0});
}
EntireFunction EntireFunction::sum(std::vector<EntireFunction> terms) {
  return EntireFunction(SumRep{std::move(terms)});
}
EntireFunction EntireFunction::product(EntireFunction lhs, EntireFunction rhs) {
  return EntireFunction(std::make_shared<const ProductRep>(ProductRep{std::move(lhs), std::move(rhs)}));
}
EntireFunction EntireFunction::scaled(cplx factor, EntireFunction inner) {
  if (const auto* s = std::get_if<std::shared_ptr<const ScaledRep>>(&inner.rep())) {
    return scaled(factor * (*s)->factor, (*s)->inner);
  }
  return EntireFunction(std::make_shared<const ScaledRep>(ScaledRep{factor, std::move(inner)}));
}

cplx EntireFunction::operator()(cplx z) const {
  return std::visit(
      overloaded{
          [&](const SeriesRep& s) {
            const std::size_t n = s.polynomial ? s.coeffs.size() : certify(s, std::abs(z));
            return horner(s.coeffs, n, z);
          },
          [&](const NamedRep& n) -> cplx {
            switch (n.kind) {
              case NamedKind::exp_scaled: return std::exp(n.c * z);
              case NamedKind::cos: return std::cos(z);
              case NamedKind::sin: return std::sin(z);
              case NamedKind::monomial: return std::pow(z, n.m);
              case NamedKind::constant: return n.c;
            }
            return {};
          },
          [&](const SumRep& s) {
            cplx acc{0.0, 0.0};
            for (const auto& t : s.terms) acc += t(z);
            return acc;
          },
          [&](const std::shared_ptr<const ProductRep>& p) { return p->lhs(z) * p->rhs(z); },
          [&](const std::shared_ptr<const ScaledRep>& s) { return s->factor * s->inner(z); },
      },
      *rep_);
}

EntireFunction operator+(const EntireFunction& a, const EntireFunction& b) {
  return EntireFunction::sum({a, b});
}
EntireFunction operator-(const EntireFunction& a, const EntireFunction& b) {
  return EntireFunction::sum({a, EntireFunction::scaled(-1.0, b)});
}
EntireFunction operator*(const EntireFunction& a, const EntireFunction& b) {
  return EntireFunction::product(a, b);
}
EntireFunction operator*(cplx c, const EntireFunction& f) { return EntireFunction::scaled(c, f); }

namespace {

EntireFunction derivative_once(const EntireFunction& f) {
  using F = EntireFunction;
  return std::visit(
      overloaded{
          [&](const SeriesRep& s) {
            std::vector<cplx> d;
            for (std::size_t i = 1; i < s.coeffs.size(); ++i) {
              d.push_back(s.coeffs[i] * static_cast<double>(i));
            }
            return s.polynomial ? F::polynomial(std::move(d)) : F::power_series(std::move(d), s.tail_tol);
          },
          [&](const NamedRep& n) {
            switch (n.kind) {
              case NamedKind::exp_scaled: return F::scaled(n.c, F::exp_scaled(n.c));
              case NamedKind::cos: return F::scaled(-1.0, F::sin());
              case NamedKind::sin: return F::cos();
              case NamedKind::monomial:
                if (n.m == 0) return F::constant(0.0);
                return F::scaled(static_cast<double>(n.m), F::monomial(n.m - 1));
              case NamedKind::constant: return F::constant(0.0);
            }
            return F{};
          },
          [&](const SumRep& s) {
            std::vector<F> terms;
            for (const auto& t : s.terms) terms.push_back(derivative_once(t));
            return F::sum(std::move(terms));
          },
          [&](const std::shared_ptr<const ProductRep>& p) {
            return derivative_once(p->lhs) * p->rhs + p->lhs * derivative_once(p->rhs);
          },
          [&](const std::shared_ptr<const ScaledRep>& s) {
            return F::scaled(s->factor, derivative_once(s->inner));
          },
      },
      f.rep());
}

EntireFunction integrate_series(const std::vector<cplx>& a, bool polynomial, double tail_tol) {
  std::vector<cplx> out(a.size() + 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) out[i + 1] = a[i] / static_cast<double>(i + 1);
  return polynomial ? EntireFunction::polynomial(std::move(out))
                    : EntireFunction::power_series(std::move(out), tail_tol);
}

EntireFunction primitive_once(const EntireFunction& f) {
  using F = EntireFunction;
  return std::visit(
      overloaded{
          [&](const SeriesRep& s) { return integrate_series(s.coeffs, s.polynomial, s.tail_tol); },
          [&](const NamedRep& n) {
            switch (n.kind) {
              case NamedKind::exp_scaled:
                if (n.c == cplx{0.0, 0.0}) return F::polynomial({0.0, 1.0});
                return F::scaled(1.0 / n.c, F::exp_scaled(n.c) - F::constant(1.0));
              case NamedKind::cos: return F::sin();
              case NamedKind::sin: return F::constant(1.0) - F::cos();
              case NamedKind::monomial:
                return F::scaled(1.0 / static_cast<double>(n.m + 1), F::monomial(n.m + 1));
              case NamedKind::constant: return F::polynomial({0.0, n.c});
            }
            return F{};
          },
          [&](const SumRep& s) {
            std::vector<F> terms;
            for (const auto& t : s.terms) terms.push_back(primitive_once(t));
            return F::sum(std::move(terms));
          },
          [&](const std::shared_ptr<const ProductRep>&) {
            if (auto poly = polynomial_coefficients(f)) return integrate_series(*poly, true, 0.0);
            return integrate_series(taylor_coefficients(f, kProductSeriesDegree), false, 1e-14);
          },
          [&](const std::shared_ptr<const ScaledRep>& s) {
            return F::scaled(s->factor, primitive_once(s->inner));
          },
      },
      f.rep());
}

}  // namespace

EntireFunction differentiate(const EntireFunction& f, int order) {
  if (order < 0) throw std::invalid_argument("differentiate: order must be >= 0");
  EntireFunction out = f;
  for (int i = 0; i < order; ++i) out = derivative_once(out);
  return out;
}

EntireFunction antiderivative(const EntireFunction& f, int order) {
  if (order < 1) throw std::invalid_argument("antiderivative: order must be >= 1");
  EntireFunction out = f;
  for (int i = 0; i < order; ++i) out = primitive_once(out);
  return out;
}

std::vector<cplx> series_multiply(std::span<const cplx> a, std::span<const cplx> b, int n) {
  if (n < 0) return {};
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
  for (int k = 0; k <= n; ++k) {
    cplx acc{0.0, 0.0};
    for (int i = 0; i <= k; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(k - i);
      if (ui < a.size() && uj < b.size()) acc += a[ui] * b[uj];
    }
    c[static_cast<std::size_t>(k)] = acc;
  }
  return c;
}

std::vector<cplx> taylor_coefficients(const EntireFunction& f, int n) {
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<cplx> out(size, cplx{0.0, 0.0});
  std::visit(
      overloaded{
          [&](const SeriesRep& s) {
            for (std::size_t i = 0; i < size && i < s.coeffs.size(); ++i) out[i] = s.coeffs[i];
          },
          [&](const NamedRep& nm) {
            switch (nm.kind) {
              case NamedKind::exp_scaled: {
                cplx term{1.0, 0.0};
                for (std::size_t i = 0; i < size; ++i) {
                  out[i] = term;
                  term *= nm.c / static_cast<double>(i + 1);
                }
                break;
              }
              case NamedKind::cos:
              case NamedKind::sin: {
                const std::size_t start = nm.kind == NamedKind::cos ? 0 : 1;
                double term = 1.0;
                for (std::size_t i = 0; i < size; ++i) {
                  if (i > 0) term /= static_cast<double>(i);
                  if (i >= start && (i - start) % 2 == 0) {
                    out[i] = ((i - start) / 2) % 2 == 0 ? term : -term;
                  }
                }
                break;
              }
              case NamedKind::monomial:
                if (static_cast<std::size_t>(nm.m) < size) out[static_cast<std::size_t>(nm.m)] = 1.0;
                break;
              case NamedKind::constant: out[0] = nm.c; break;
            }
          },
          [&](const SumRep& s) {
            for (const auto& t : s.terms) {
              const auto c = taylor_coefficients(t, n);
              for (std::size_t i = 0; i < size; ++i) out[i] += c[i];
            }
          },
          [&](const std::shared_ptr<const ProductRep>& p) {
            out = series_multiply(taylor_coefficients(p->lhs, n), taylor_coefficients(p->rhs, n), n);
          },
          [&](const std::shared_ptr<const ScaledRep>& s) {
            out = taylor_coefficients(s->inner, n);
            for (auto& c : out) c *= s->factor;
          },
      },
      f.rep());
  return out;
}

namespace {

// Upper bound on the degree of a structurally polynomial expression.
std::optional<int> degree_bound(const EntireFunction& f) {
  return std::visit(
      overloaded{
          [](const SeriesRep& s) -> std::optional<int> {
            if (!s.polynomial) return std::nullopt;
            return static_cast<int>(s.coeffs.size()) - 1;
          },
          [](const NamedRep& n) -> std::optional<int> {
            switch (n.kind) {
              case NamedKind::monomial: return n.m;
              case NamedKind::constant: return 0;
              case NamedKind::exp_scaled:
                if (n.c == cplx{0.0, 0.0}) return 0;
                return std::nullopt;
              default: return std::nullopt;
            }
          },
          [](const SumRep& s) -> std::optional<int> {
            int d = -1;
            for (const auto& t : s.terms) {
              auto td = degree_bound(t);
              if (!td) return std::nullopt;
              d = std::max(d, *td);
            }
            return d;
          },
          [](const std::shared_ptr<const ProductRep>& p) -> std::optional<int> {
            auto a = degree_bound(p->lhs);
            auto b = degree_bound(p->rhs);
            if (!a || !b) return std::nullopt;
            if (*a < 0 || *b < 0) return -1;
            return *a + *b;
          },
          [](const std::shared_ptr<const ScaledRep>& s) { return degree_bound(s->inner); },
      },
      f.rep());
}

bool structurally_zero(const EntireFunction& f) {
  return std::visit(
      overloaded{
          [](const SeriesRep& s) {
            for (const auto& c : s.coeffs)
              if (c != cplx{0.0, 0.0}) return false;
            return true;
          },
          [](const NamedRep& n) { return n.kind == NamedKind::constant && n.c == cplx{0.0, 0.0}; },
          [](const SumRep& s) {
            for (const auto& t : s.terms)
              if (!structurally_zero(t)) return false;
            return true;
          },
          [](const std::shared_ptr<const ProductRep>& p) {
            return structurally_zero(p->lhs) || structurally_zero(p->rhs);
          },
          [](const std::shared_ptr<const ScaledRep>& s) {
            return s->factor == cplx{0.0, 0.0} || structurally_zero(s->inner);
          },
      },
      f.rep());
}

}  // namespace

std::optional<std::vector<cplx>> polynomial_coefficients(const EntireFunction& f) {
  const auto bound = degree_bound(f);
  if (!bound) return std::nullopt;
  if (*bound < 0) return std::vector<cplx>{};
  auto c = taylor_coefficients(f, *bound);
  while (!c.empty() && c.back() == cplx{0.0, 0.0}) c.pop_back();
  return c;
}

std::optional<int> polynomial_degree(const EntireFunction& f) {
  auto c = polynomial_coefficients(f);
  if (!c) return std::nullopt;
  return static_cast<int>(c->size()) - 1;
}

bool is_zero(const EntireFunction& f) {
  if (structurally_zero(f)) return true;
  auto d = polynomial_degree(f);
  return d && *d < 0;
}

bool is_constant(const EntireFunction& f) {
  auto d = polynomial_degree(f);
  return d && *d <= 0;
}

double max_modulus(const EntireFunction& f, double r, int n_theta) {
  if (r < 0.0) throw std::invalid_argument("max_modulus: negative radius");
  if (n_theta < 64) throw std::invalid_argument("max_modulus: n_theta must be >= 64");
  const double step = 2.0 * std::numbers::pi / n_theta;
  auto g = [&](double theta) { return std::abs(f(std::polar(r, theta))); };
  std::vector<double> v(static_cast<std::size_t>(n_theta));
  double best = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    v[static_cast<std::size_t>(j)] = g(step * j);
    best = std::max(best, v[static_cast<std::size_t>(j)]);
  }
  if (r == 0.0 || best == 0.0) return best;
  // Golden-section refinement of every grid local maximum close to the top,
  // so the result does not depend on the angular resolution.
  const double phi_inv = 0.5 * (std::sqrt(5.0) - 1.0);
  double refined = best;
  for (int j = 0; j < n_theta; ++j) {
    const double vj = v[static_cast<std::size_t>(j)];
    const double prev = v[static_cast<std::size_t>((j + n_theta - 1) % n_theta)];
    const double next = v[static_cast<std::size_t>((j + 1) % n_theta)];
    if (vj < prev || vj < next || vj < 0.5 * best) continue;
    double a = step * (j - 1), b = step * (j + 1);
    double c = b - phi_inv * (b - a), d = a + phi_inv * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
      if (gc > gd) {
        b = d; d = c; gd = gc;
        c = b - phi_inv * (b - a); gc = g(c);
      } else {
        a = c; c = d; gc = gd;
        d = a + phi_inv * (b - a); gd = g(d);
      }
    }
    refined = std::max({refined, gc, gd});
  }
  return refined;
}

double nevanlinna_proxy(const EntireFunction& f, double r, int n_theta) {
  return std::max(0.0, std::log(max_modulus(f, r, n_theta)));
}

}  // namespace fockde
