#pragma once

// Tridiagonal solves and diagnostics for TridiagonalSystem.

#include "layerfd/error.hpp"
#include "layerfd/scheme.hpp"
#include "layerfd/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace layerfd {

/// Thomas algorithm without pivoting. Throws SingularSystemError when a pivot
/// falls below 1e-300 in magnitude.
template <typename Scalar>
VectorX<Scalar> thomas_solve(const TridiagonalSystem<Scalar>& sys) {
  using std::abs;
  const Index n = sys.size();
  if (n == 0) return {};
  if (sys.sub.size() != n || sys.sup.size() != n || sys.rhs.size() != n)
    throw ShapeError("tridiagonal bands differ in length");

  VectorX<Scalar> c(n), d(n);
  Scalar pivot = sys.diag(0);
  if (!(abs(pivot) >= Scalar(1e-300))) throw SingularSystemError("zero pivot in row 0");
  c(0) = sys.sup(0) / pivot;
  d(0) = sys.rhs(0) / pivot;
  for (Index i = 1; i < n; ++i) {
    pivot = sys.diag(i) - sys.sub(i) * c(i - 1);
    if (!(abs(pivot) >= Scalar(1e-300)))
      throw SingularSystemError("zero pivot in row " + std::to_string(i));
    c(i) = i + 1 < n ? sys.sup(i) / pivot : Scalar(0);
    d(i) = (sys.rhs(i) - sys.sub(i) * d(i - 1)) / pivot;
  }
  VectorX<Scalar> x(n);
  x(n - 1) = d(n - 1);
  for (Index i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
  return x;
}

/// A v, row by row. sub(0) and sup(n-1) are ignored.
template <typename Scalar>
VectorX<Scalar> apply_operator(const TridiagonalSystem<Scalar>& sys, const VectorX<Scalar>& v) {
  const Index n = sys.size();
  if (v.size() != n) throw ShapeError("vector length does not match the system");
  VectorX<Scalar> out(n);
  for (Index i = 0; i < n; ++i) {
    Scalar s = sys.diag(i) * v(i);
    if (i > 0) s += sys.sub(i) * v(i - 1);
    if (i + 1 < n) s += sys.sup(i) * v(i + 1);
    out(i) = s;
  }
  return out;
}

/// Max absolute row sum.
template <typename Scalar>
Scalar inf_norm(const TridiagonalSystem<Scalar>& sys) {
  using std::abs;
  Scalar best(0);
  const Index n = sys.size();
  for (Index i = 0; i < n; ++i) {
    Scalar s = abs(sys.diag(i));
    if (i > 0) s += abs(sys.sub(i));
    if (i + 1 < n) s += abs(sys.sup(i));
    best = std::max(best, s);
  }
  return best;
}

struct MMatrixReport {
  bool ok{false};
  std::optional<Index> first_violation;
};

/// Sign pattern sub <= 0, sup <= 0, diag > 0 in every row, weak diagonal
/// dominance diag >= |sub| + |sup| - tol*diag, and strict dominance in at
/// least one row.
template <typename Scalar>
MMatrixReport is_m_matrix(const TridiagonalSystem<Scalar>& sys, Scalar tol = Scalar(1e-12)) {
  using std::abs;
  const Index n = sys.size();
  bool strict = false;
  for (Index i = 0; i < n; ++i) {
    const Scalar lo = i > 0 ? sys.sub(i) : Scalar(0);
    const Scalar up = i + 1 < n ? sys.sup(i) : Scalar(0);
    const Scalar d = sys.diag(i);
    const Scalar off = abs(lo) + abs(up);
    if (lo > Scalar(0) || up > Scalar(0) || !(d > Scalar(0)) || d < off - tol * d)
      return {false, i};
    if (d > off * (Scalar(1) + tol)) strict = true;
  }
  if (!strict) return {false, std::nullopt};
  return {true, std::nullopt};
}

/// Dense A^{-1} built column by column from unit right-hand sides.
template <typename Scalar>
MatrixX<Scalar> dense_inverse(const TridiagonalSystem<Scalar>& sys) {
  const Index n = sys.size();
  if (n > 4097) throw ConfigError("dense inverse is limited to N <= 4096");
  MatrixX<Scalar> inv(n, n);
  TridiagonalSystem<Scalar> unit = sys;
  for (Index j = 0; j < n; ++j) {
    unit.rhs.setZero();
    unit.rhs(j) = Scalar(1);
    inv.col(j) = thomas_solve(unit);
  }
  return inv;
}

/// kappa_inf = ||A||_inf ||A^{-1}||_inf with the inverse formed exactly.
template <typename Scalar>
Scalar inf_condition_estimate(const TridiagonalSystem<Scalar>& sys) {
  const MatrixX<Scalar> inv = dense_inverse(sys);
  const Scalar inv_norm = inv.cwiseAbs().rowwise().sum().maxCoeff();
  return inf_norm(sys) * inv_norm;
}

}  // namespace layerfd
