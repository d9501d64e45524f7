#pragma once

// Nodal data for the reduced solution u0: closed form or RK4 on the mesh,
// with u0'' reconstructed from the reduced equation.

#include "layerfd/error.hpp"
#include "layerfd/mesh.hpp"
#include "layerfd/problems.hpp"
#include "layerfd/types.hpp"

#include <cmath>
#include <string_view>

namespace layerfd {

enum class ReducedMode { Exact, RK4 };

ReducedMode parse_reduced_mode(std::string_view name);
std::string_view to_string(ReducedMode mode);

namespace detail {

// Slope of the reduced equation u0' = (c u0 - f)/b. Where b vanishes the
// point is accepted only if c u0 - f vanishes as well (a removable
// singularity); the slope is then the l'Hopital limit (c' u0 - f')/(b' - c).
template <typename Scalar>
Scalar reduced_slope(const TwoPointBVP<Scalar>& p, Scalar x, Scalar u) {
  using std::abs;
  const auto& cs = p.coeffs;
  const Scalar bx = cs.b(x);
  if (abs(bx) >= Scalar(1e-14)) return (cs.c(x) * u - cs.f(x)) / bx;
  const Scalar residual = cs.c(x) * u - cs.f(x);
  const Scalar denom = cs.db(x) - cs.c(x);
  if (abs(residual) > Scalar(1e-12) || abs(denom) < Scalar(1e-14))
    throw SingularCoefficientError("reduced equation is singular at x=" + std::to_string(double(x)));
  return (cs.dc(x) * u - cs.df(x)) / denom;
}

}  // namespace detail

/// Integrates the terminal-value problem u0' = (c u0 - f)/b, u0(1) = g1,
/// from x = 1 down to x = 0 with one classical RK4 step per mesh cell.
template <typename Scalar>
VectorX<Scalar> rk4_terminal_solve(const TwoPointBVP<Scalar>& p, const Mesh<Scalar>& mesh) {
  const Index N = mesh.N();
  VectorX<Scalar> u(N + 1);
  u(N) = p.g1;
  auto F = [&p](Scalar x, Scalar y) { return detail::reduced_slope(p, x, y); };
  for (Index i = N; i > 0; --i) {
    const Scalar x = mesh.points(i);
    const Scalar step = mesh.points(i - 1) - x;  // negative
    const Scalar y = u(i);
    const Scalar k1 = F(x, y);
    const Scalar k2 = F(x + step / 2, y + step / 2 * k1);
    const Scalar k3 = F(x + step / 2, y + step / 2 * k2);
    const Scalar k4 = F(x + step, y + step * k3);
    u(i - 1) = y + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return u;
}

template <typename Scalar>
struct ReducedData {
  VectorX<Scalar> u0;
  VectorX<Scalar> u0pp;
};

/// u0 at the nodes (closed form or RK4) and u0'' from reduced_second_derivative
/// applied to those nodal values. The scheme only reads u0'' at interior
/// nodes; at an endpoint where b vanishes the neighbouring value is copied.
template <typename Scalar>
ReducedData<Scalar> reduced_nodal_data(const TwoPointBVP<Scalar>& p, const Mesh<Scalar>& mesh,
                                       ReducedMode mode) {
  const Index N = mesh.N();
  ReducedData<Scalar> out;
  if (mode == ReducedMode::Exact) {
    if (!p.reduced_exact) throw ConfigError("problem has no closed-form reduced solution");
    out.u0 = mesh.points.unaryExpr(*p.reduced_exact);
  } else {
    out.u0 = rk4_terminal_solve(p, mesh);
  }
  out.u0pp.resize(N + 1);
  for (Index i = 1; i < N; ++i)
    out.u0pp(i) = reduced_second_derivative(p, mesh.points(i), out.u0(i));
  for (Index i : {Index(0), N}) {
    const Index neighbour = i == 0 ? 1 : N - 1;
    try {
      out.u0pp(i) = reduced_second_derivative(p, mesh.points(i), out.u0(i));
    } catch (const SingularCoefficientError&) {
      out.u0pp(i) = out.u0pp(neighbour);
    }
  }
  return out;
}

}  // namespace layerfd
