#pragma once

// Samarskii-type schemes
//   L^N U_i = -eps sigma_i D'' U_i - b(x_i) D^+ U_i + c(x_i) U_i
// on a piecewise-uniform mesh, assembled as a tridiagonal system whose first
// and last rows are identity rows carrying the Dirichlet data.

#include "layerfd/error.hpp"
#include "layerfd/mesh.hpp"
#include "layerfd/problems.hpp"
#include "layerfd/types.hpp"

#include <cmath>
#include <string_view>
#include <utility>

namespace layerfd {

enum class FittingKind { Upwind, Samarskii, RunchalSpalding, ASI, ExactFit };

FittingKind parse_fitting_kind(std::string_view name);
std::string_view to_string(FittingKind kind);

template <typename Scalar>
Scalar rho(Scalar b_i, Scalar h_next, Scalar eps) {
  return b_i * h_next / (Scalar(2) * eps);
}

/// sigma_ASI(rho) = 2 rho / (exp(2 rho) - 1), with sigma_ASI(0) = 1.
template <typename Scalar>
Scalar sigma_asi(Scalar r) {
  if (r < Scalar(1e-4)) return Scalar(1) - r + r * r / Scalar(3);
  if (r > Scalar(350)) return Scalar(2) * r * std::exp(Scalar(-2) * r);
  return Scalar(2) * r / std::expm1(Scalar(2) * r);
}

template <typename Scalar>
Scalar sigma(FittingKind kind, Scalar r) {
  if (r < Scalar(0) || std::isnan(r)) throw DomainError("fitting factor needs rho >= 0");
  switch (kind) {
    case FittingKind::Upwind:
      return Scalar(1);
    case FittingKind::Samarskii:
      return Scalar(1) / (Scalar(1) + r);
    case FittingKind::RunchalSpalding:
      return r < Scalar(1) ? Scalar(1) - r : Scalar(0);
    case FittingKind::ASI:
      return sigma_asi(r);
    case FittingKind::ExactFit:
      break;
  }
  throw DomainError("ExactFit depends on both neighbouring steps; use sigma_exact_fit");
}

namespace detail {

// phi(z) = (exp(z) - 1 - z) / z^2, phi(0) = 1/2.
template <typename Scalar>
Scalar phi2(Scalar z) {
  using std::abs;
  if (abs(z) < Scalar(0.5)) {
    Scalar term = Scalar(0.5), sum = term;
    for (int k = 3; k < 20; ++k) {
      term *= z / Scalar(k);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

// psi(z) = (1 - exp(-z)) / z, psi(0) = 1.
template <typename Scalar>
Scalar psi1(Scalar z) {
  using std::abs;
  if (abs(z) < Scalar(0.5)) {
    Scalar term = Scalar(1), sum = term;
    for (int k = 2; k < 20; ++k) {
      term *= -z / Scalar(k);
      sum += term;
    }
    return sum;
  }
  return -std::expm1(-z) / z;
}

}  // namespace detail

/// Fitting factor that makes -eps sigma D'' v - b D^+ v vanish at x_i for
/// v = exp(-b x / eps) on a nonuniform stencil:
///
///   sigma_i = hbar rho^- (1 - e^{-rho^+}) / (h_i (e^{-rho^+} - 1) + h_{i+1} (e^{rho^-} - 1)),
///   rho^- = b h_i / eps, rho^+ = b h_{i+1} / eps.
///
/// The first-order terms of the denominator cancel exactly, so it is
/// evaluated as (b/eps)^2 h_i h_{i+1} (h_{i+1} phi(-rho^+) + h_i phi(rho^-)),
/// giving sigma_i = hbar psi(rho^+) / (h_{i+1} phi(-rho^+) + h_i phi(rho^-)).
/// For large rho^- the exp(rho^-) factor is divided out.
template <typename Scalar>
Scalar sigma_exact_fit(Scalar b_i, Scalar h_i, Scalar h_next, Scalar eps) {
  if (b_i < Scalar(0) || !(h_i > Scalar(0)) || !(h_next > Scalar(0)) || !(eps > Scalar(0)))
    throw DomainError("exact-fit factor needs b >= 0 and positive steps and eps");
  const Scalar hbar = (h_i + h_next) / Scalar(2);
  const Scalar rp = b_i * h_next / eps;
  const Scalar rm = b_i * h_i / eps;
  const Scalar num = hbar * detail::psi1(rp);
  if (rm > Scalar(600)) {
    // h_i phi(rm) = h_i e^{rm} (1 - (1+rm) e^{-rm}) / rm^2 dominates.
    const Scalar scale = std::exp(-rm);
    const Scalar den = h_next * detail::phi2(-rp) * scale +
                       h_i * (Scalar(1) - (Scalar(1) + rm) * scale) / (rm * rm);
    return num * scale / den;
  }
  return num / (h_next * detail::phi2(-rp) + h_i * detail::phi2(rm));
}

/// sigma_i for row i of the mesh (1 <= i <= N-1).
template <typename Scalar>
Scalar fitting_value(FittingKind kind, Scalar b_i, Scalar h_i, Scalar h_next, Scalar eps) {
  if (kind == FittingKind::ExactFit) return sigma_exact_fit(b_i, h_i, h_next, eps);
  return sigma(kind, rho(b_i, h_next, eps));
}

template <typename Scalar>
struct TridiagonalSystem {
  VectorX<Scalar> sub, diag, sup, rhs;
  bool scaled{false};
  // Identity of the mesh the rows were built on.
  Index mesh_J{0};
  Scalar mesh_xi{0};

  Index size() const { return diag.size(); }

  static TridiagonalSystem zeros(Index n) {
    TridiagonalSystem s;
    s.sub = VectorX<Scalar>::Zero(n);
    s.diag = VectorX<Scalar>::Zero(n);
    s.sup = VectorX<Scalar>::Zero(n);
    s.rhs = VectorX<Scalar>::Zero(n);
    return s;
  }
};

/// Interior row i:
///   sub  = -eps sigma_i / (hbar_i h_i)
///   sup  = -eps sigma_i / (hbar_i h_{i+1}) - b_i / h_{i+1}
///   diag =  eps sigma_i (1/h_i + 1/h_{i+1}) / hbar_i + b_i / h_{i+1} + c_i
/// with rhs(i) = rhs_values(i). Rows 0 and N are identity rows carrying
/// the boundary pair.
template <typename Scalar>
TridiagonalSystem<Scalar> assemble(const VectorX<Scalar>& rhs_values, const TwoPointBVP<Scalar>& bvp,
                                   const Mesh<Scalar>& mesh, FittingKind kind,
                                   std::pair<Scalar, Scalar> boundary) {
  const Index N = mesh.N();
  if (rhs_values.size() != N + 1) throw ShapeError("rhs length does not match the mesh");
  const Scalar eps = bvp.eps;
  const auto& cs = bvp.coeffs;

  auto sys = TridiagonalSystem<Scalar>::zeros(N + 1);
  sys.mesh_J = mesh.J;
  sys.mesh_xi = mesh.xi;
  sys.diag(0) = Scalar(1);
  sys.rhs(0) = boundary.first;
  sys.diag(N) = Scalar(1);
  sys.rhs(N) = boundary.second;

  for (Index i = 1; i < N; ++i) {
    const Scalar x = mesh.points(i);
    const Scalar hi = mesh.points(i) - mesh.points(i - 1);
    const Scalar hn = mesh.points(i + 1) - mesh.points(i);
    const Scalar hbar = (hi + hn) / Scalar(2);
    const Scalar bi = cs.b(x);
    const Scalar ci = cs.c(x);
    if (ci < Scalar(0))
      throw AssumptionError("c(x) < 0 at node " + std::to_string(i));
    const Scalar diffusion = eps * fitting_value(kind, bi, hi, hn, eps) / hbar;
    sys.sub(i) = -diffusion / hi;
    sys.sup(i) = -diffusion / hn - bi / hn;
    sys.diag(i) = diffusion * (Scalar(1) / hi + Scalar(1) / hn) + bi / hn + ci;
    sys.rhs(i) = rhs_values(i);
  }
  return sys;
}

/// Row scaling m_i = h/H for 1 <= i <= J-1 (rows J..N-1 and the boundary
/// rows are left alone). The solution is unchanged.
template <typename Scalar>
TridiagonalSystem<Scalar> precondition(TridiagonalSystem<Scalar> sys, const Mesh<Scalar>& mesh) {
  if (sys.scaled) throw StateError("system is already preconditioned");
  if (sys.size() != mesh.N() + 1 || sys.mesh_J != mesh.J || sys.mesh_xi != mesh.xi)
    throw ShapeError("system was not assembled on this mesh");
  const Scalar m = mesh.h / mesh.H;
  for (Index i = 1; i < mesh.J; ++i) {
    sys.sub(i) *= m;
    sys.diag(i) *= m;
    sys.sup(i) *= m;
    sys.rhs(i) *= m;
  }
  sys.scaled = true;
  return sys;
}

}  // namespace layerfd
