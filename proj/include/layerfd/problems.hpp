#pragma once

// Continuous problem  -eps u'' - b(x) u' + c(x) u = f(x) on (0,1),
// u(0) = g0, u(1) = g1, together with its reduced (eps = 0) problem and the
// transformed problem for w = u - u0.

#include "layerfd/error.hpp"
#include "layerfd/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace layerfd {

template <typename Scalar>
struct CoefficientSet {
  ScalarFn<Scalar> b, c, f;
  ScalarFn<Scalar> db, dc, df;
  Scalar beta{0.8};
};

/// Samples the coefficients on a dense grid and throws AssumptionError when
/// b <= 0 somewhere on [0,1), c < 0 somewhere on [0,1], or a derivative
/// handle disagrees with a centered difference by more than 1e-6 relative.
template <typename Scalar>
void validate_coefficients(const CoefficientSet<Scalar>& cs, int samples = 1000) {
  using std::abs;
  if (!(cs.beta > Scalar(0))) throw ConfigError("beta must be positive");
  if (!cs.b || !cs.c || !cs.f || !cs.db || !cs.dc || !cs.df)
    throw ConfigError("coefficient set is missing a function handle");

  const Scalar step = Scalar(1e-5);
  auto check_derivative = [&](const ScalarFn<Scalar>& g, const ScalarFn<Scalar>& dg,
                              Scalar x, const char* name) {
    Scalar fd;
    if (x - step < Scalar(0))
      fd = (-Scalar(3) * g(x) + Scalar(4) * g(x + step) - g(x + 2 * step)) / (2 * step);
    else if (x + step > Scalar(1))
      fd = (Scalar(3) * g(x) - Scalar(4) * g(x - step) + g(x - 2 * step)) / (2 * step);
    else
      fd = (g(x + step) - g(x - step)) / (2 * step);
    const Scalar d = dg(x);
    if (abs(d - fd) > Scalar(1e-6) * std::max(Scalar(1), abs(fd)))
      throw AssumptionError(std::string("derivative of ") + name +
                            " disagrees with finite differences at x=" + std::to_string(double(x)));
  };

  for (int k = 0; k <= samples; ++k) {
    const Scalar x = Scalar(k) / Scalar(samples);
    if (k < samples && !(cs.b(x) > Scalar(0)))
      throw AssumptionError("b(x) must be positive on [0,1), fails at x=" + std::to_string(double(x)));
    if (cs.c(x) < Scalar(0))
      throw AssumptionError("c(x) must be nonnegative, fails at x=" + std::to_string(double(x)));
    check_derivative(cs.b, cs.db, x, "b");
    check_derivative(cs.c, cs.dc, x, "c");
    check_derivative(cs.f, cs.df, x, "f");
  }
}

template <typename Scalar>
struct TwoPointBVP {
  CoefficientSet<Scalar> coeffs;
  Scalar eps{1};
  Scalar g0{0}, g1{0};
  std::optional<ScalarFn<Scalar>> exact;
  std::optional<Scalar> exact_du0;
  std::optional<ScalarFn<Scalar>> reduced_exact;
};

/// Checks the TwoPointBVP invariants (coefficients, 0 < eps <= 1, and exact
/// boundary consistency when a closed form is attached).
template <typename Scalar>
void validate_problem(const TwoPointBVP<Scalar>& p) {
  using std::abs;
  if (!(p.eps > Scalar(0) && p.eps <= Scalar(1)))
    throw ConfigError("eps must lie in (0,1]");
  validate_coefficients(p.coeffs);
  if (p.exact) {
    const auto& u = *p.exact;
    if (abs(u(Scalar(0)) - p.g0) > Scalar(1e-12) || abs(u(Scalar(1)) - p.g1) > Scalar(1e-12))
      throw ConfigError("exact solution does not match the Dirichlet data");
  }
}

// ---------------------------------------------------------------------------
// Reduced problem: -b u0' + c u0 = f, u0(1) = g1.

namespace detail {
template <typename Scalar>
void require_regular_b(Scalar bx, Scalar x) {
  using std::abs;
  if (abs(bx) < Scalar(1e-14))
    throw SingularCoefficientError("b vanishes at x=" + std::to_string(double(x)));
}
}  // namespace detail

template <typename Scalar>
Scalar reduced_derivative(const TwoPointBVP<Scalar>& p, Scalar x, Scalar u0) {
  const auto& cs = p.coeffs;
  const Scalar bx = cs.b(x);
  detail::require_regular_b(bx, x);
  return (cs.c(x) * u0 - cs.f(x)) / bx;
}

/// u0'' obtained by differentiating u0' = (c u0 - f)/b and substituting u0'
/// back in, so only u0 and the coefficients (with first derivatives) enter.
template <typename Scalar>
Scalar reduced_second_derivative(const TwoPointBVP<Scalar>& p, Scalar x, Scalar u0) {
  const auto& cs = p.coeffs;
  const Scalar bx = cs.b(x);
  detail::require_regular_b(bx, x);
  const Scalar cx = cs.c(x);
  const Scalar fx = cs.f(x);
  const Scalar du0 = (cx * u0 - fx) / bx;
  return ((cs.dc(x) * u0 + cx * du0 - cs.df(x)) * bx - (cx * u0 - fx) * cs.db(x)) / (bx * bx);
}

template <typename Scalar>
struct WProblem {
  TwoPointBVP<Scalar> base;
  VectorX<Scalar> u0_at;
  VectorX<Scalar> u0pp_at;
  Scalar w0{0}, w1{0};

  /// Right-hand side of the w-system: eps*u0'' at interior nodes, boundary
  /// values in the first and last slots.
  VectorX<Scalar> rhs() const {
    VectorX<Scalar> r = base.eps * u0pp_at;
    r(0) = w0;
    r(r.size() - 1) = w1;
    return r;
  }
};

template <typename Scalar>
WProblem<Scalar> make_w_problem(const TwoPointBVP<Scalar>& p, VectorX<Scalar> u0_nodal,
                                VectorX<Scalar> u0pp_nodal) {
  if (u0_nodal.size() != u0pp_nodal.size())
    throw ShapeError("u0 and u0'' nodal arrays differ in length");
  if (u0_nodal.size() < 5) throw ShapeError("nodal arrays must cover a mesh with N >= 4");
  WProblem<Scalar> w;
  w.base = p;
  w.w0 = p.g0 - u0_nodal(0);
  w.w1 = p.g1 - u0_nodal(u0_nodal.size() - 1);
  w.u0_at = std::move(u0_nodal);
  w.u0pp_at = std::move(u0pp_nodal);
  return w;
}

/// Exponential layer term v(x) = -(eps u'(0)/b(0)) exp(-b(0) x / eps).
template <typename Scalar>
Scalar layer_component(const TwoPointBVP<Scalar>& p, Scalar x) {
  if (!p.exact_du0) throw UnsupportedProblemError("u'(0) is not known for this problem");
  const Scalar b0 = p.coeffs.b(Scalar(0));
  return -(p.eps * *p.exact_du0 / b0) * std::exp(-b0 * x / p.eps);
}

// ---------------------------------------------------------------------------
// Built-in test problems.

enum class ProblemName { Ex1, Ex2 };

ProblemName parse_problem_name(std::string_view name);
std::string_view to_string(ProblemName name);

namespace detail {

// expm1(d*t)/d, continuous at d = 0.
template <typename Scalar>
Scalar expm1_ratio(Scalar t, Scalar d) {
  if (d == Scalar(0)) return t;
  return std::expm1(d * t) / d;
}

// Closed form for -eps u'' - u' + 2u = exp(x-1), u(0) = u(1) = 0.
//
// Characteristic roots of -eps m^2 - m + 2 = 0 are m+ = 4/(1+s) > 0 and
// m- = -(1+s)/(2 eps) < 0 with s = sqrt(1+8 eps). The particular solution
// exp(x-1)/(1-eps) resonates with exp(m+ (x-1)) at eps = 1, so it is combined
// with that homogeneous mode:
//   P(x) = (exp(x-1) - exp(m+ (x-1)))/(1-eps) = -k exp(x-1) expm1(k(1-eps)(x-1))/(k(1-eps)),
// where m+ - 1 = k (1-eps), k = 8/((3+s)(1+s)). Then
//   u = P(x) + C1 exp(m+ (x-1)) + C2 exp(m- x).
template <typename Scalar>
struct Ex1Exact {
  Scalar mp, mm, k, delta, c1, c2;

  explicit Ex1Exact(Scalar eps) {
    const Scalar s = std::sqrt(Scalar(1) + Scalar(8) * eps);
    mp = Scalar(4) / (Scalar(1) + s);
    mm = -(Scalar(1) + s) / (Scalar(2) * eps);
    k = Scalar(8) / ((Scalar(3) + s) * (Scalar(1) + s));
    delta = Scalar(1) - eps;
    const Scalar p0 = particular(Scalar(0));
    // P(1) = 0, so: p0 + C1 e^{-m+} + C2 = 0 and C1 + C2 e^{m-} = 0.
    const Scalar ep = std::exp(-mp);
    const Scalar em = std::exp(mm);
    c2 = -p0 / (Scalar(1) - ep * em);
    c1 = -c2 * em;
  }

  Scalar particular(Scalar x) const {
    return -k * std::exp(x - Scalar(1)) * expm1_ratio(x - Scalar(1), k * delta);
  }
  Scalar particular_d(Scalar x) const {
    const Scalar t = x - Scalar(1);
    return -k * std::exp(t) * (expm1_ratio(t, k * delta) + std::exp(k * delta * t));
  }
  Scalar operator()(Scalar x) const {
    return particular(x) + c1 * std::exp(mp * (x - Scalar(1))) + c2 * std::exp(mm * x);
  }
  Scalar du(Scalar x) const {
    return particular_d(x) + c1 * mp * std::exp(mp * (x - Scalar(1))) + c2 * mm * std::exp(mm * x);
  }
};

}  // namespace detail

/// Built-in problems:
///  - Ex1: -eps u'' - u' + 2u = exp(x-1), u(0) = u(1) = 0,
///         u0(x) = exp(x-1) - exp(2(x-1)).
///  - Ex2: -eps u'' - (1-x) u' + 2u = 3(1-x), u(0) = 2, u(1) = 0,
///         u(x) = (1-x)(1 + exp(-x(2-x)/(2 eps))), u0(x) = 1-x.
/// b for Ex2 vanishes at x = 1; beta is then only a mesh parameter.
template <typename Scalar = double>
TwoPointBVP<Scalar> builtin_problem(ProblemName name, Scalar eps, Scalar beta = Scalar(0.8)) {
  if (!(eps > Scalar(0) && eps <= Scalar(1))) throw ConfigError("eps must lie in (0,1]");
  TwoPointBVP<Scalar> p;
  p.eps = eps;
  p.coeffs.beta = beta;
  switch (name) {
    case ProblemName::Ex1: {
      p.coeffs.b = [](Scalar) { return Scalar(1); };
      p.coeffs.c = [](Scalar) { return Scalar(2); };
      p.coeffs.f = [](Scalar x) { return std::exp(x - Scalar(1)); };
      p.coeffs.db = [](Scalar) { return Scalar(0); };
      p.coeffs.dc = [](Scalar) { return Scalar(0); };
      p.coeffs.df = [](Scalar x) { return std::exp(x - Scalar(1)); };
      p.g0 = p.g1 = Scalar(0);
      const detail::Ex1Exact<Scalar> sol(eps);
      p.exact = [sol](Scalar x) { return sol(x); };
      p.exact_du0 = sol.du(Scalar(0));
      p.reduced_exact = [](Scalar x) {
        return std::exp(x - Scalar(1)) - std::exp(Scalar(2) * (x - Scalar(1)));
      };
      break;
    }
    case ProblemName::Ex2: {
      p.coeffs.b = [](Scalar x) { return Scalar(1) - x; };
      p.coeffs.c = [](Scalar) { return Scalar(2); };
      p.coeffs.f = [](Scalar x) { return Scalar(3) * (Scalar(1) - x); };
      p.coeffs.db = [](Scalar) { return Scalar(-1); };
      p.coeffs.dc = [](Scalar) { return Scalar(0); };
      p.coeffs.df = [](Scalar) { return Scalar(-3); };
      p.g0 = Scalar(2);
      p.g1 = Scalar(0);
      p.exact = [eps](Scalar x) {
        return (Scalar(1) - x) * (Scalar(1) + std::exp(-x * (Scalar(2) - x) / (Scalar(2) * eps)));
      };
      p.exact_du0 = Scalar(-2) - Scalar(1) / eps;
      p.reduced_exact = [](Scalar x) { return Scalar(1) - x; };
      break;
    }
  }
  validate_problem(p);
  return p;
}

}  // namespace layerfd
