#pragma once

// Truncation errors of the scheme family and the error model curves used to
// read convergence tables.

#include "layerfd/error.hpp"
#include "layerfd/mesh.hpp"
#include "layerfd/problems.hpp"
#include "layerfd/scheme.hpp"
#include "layerfd/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace layerfd {

/// tau_i[g] = -eps sigma_i D''g(x_i) - b(x_i) D^+g(x_i) + eps g''(x_i) + b(x_i) g'(x_i)
/// for i = 1..N-1; entry k of the result is node i = k+1. The c-terms cancel.
template <typename Scalar>
VectorX<Scalar> truncation_error(const TwoPointBVP<Scalar>& bvp, const Mesh<Scalar>& mesh,
                                 FittingKind kind, const ScalarFn<Scalar>& g,
                                 const ScalarFn<Scalar>& g1, const ScalarFn<Scalar>& g2) {
  const Index N = mesh.N();
  const Scalar eps = bvp.eps;
  VectorX<Scalar> tau(N - 1);
  for (Index i = 1; i < N; ++i) {
    const Scalar xl = mesh.points(i - 1), x = mesh.points(i), xr = mesh.points(i + 1);
    const Scalar hi = x - xl, hn = xr - x, hbar = (hi + hn) / Scalar(2);
    const Scalar gl = g(xl), gx = g(x), gr = g(xr);
    const Scalar dplus = (gr - gx) / hn;
    const Scalar dminus = (gx - gl) / hi;
    const Scalar d2 = (dplus - dminus) / hbar;
    const Scalar bi = bvp.coeffs.b(x);
    const Scalar s = fitting_value(kind, bi, hi, hn, eps);
    tau(i - 1) = -eps * s * d2 - bi * dplus + eps * g2(x) + bi * g1(x);
  }
  return tau;
}

/// Truncation error of the layer term v(x) = -(eps u'(0)/b(0)) exp(-b(0)x/eps).
template <typename Scalar>
VectorX<Scalar> layer_truncation_profile(const TwoPointBVP<Scalar>& bvp, const Mesh<Scalar>& mesh,
                                         FittingKind kind) {
  if (!bvp.exact_du0) throw UnsupportedProblemError("u'(0) is not known for this problem");
  const Scalar eps = bvp.eps;
  const Scalar b0 = bvp.coeffs.b(Scalar(0));
  const Scalar du0 = *bvp.exact_du0;
  const Scalar amp = -eps * du0 / b0;
  ScalarFn<Scalar> v = [=](Scalar x) { return amp * std::exp(-b0 * x / eps); };
  ScalarFn<Scalar> dv = [=](Scalar x) { return du0 * std::exp(-b0 * x / eps); };
  ScalarFn<Scalar> d2v = [=](Scalar x) { return -(b0 / eps) * du0 * std::exp(-b0 * x / eps); };
  return truncation_error(bvp, mesh, kind, v, dv, d2v);
}

struct ModelCurves {
  double nu1{0};
  double nu2{0};
  double F{0};
};

/// nu1 = max{eps N^-2 (ln N)^2, eps N^-1 + N^-(a+1)/2}
/// nu2 = max{eps |ln eps|^3 N^-2, eps N^-1}
/// F   = max{eps N^-2 (ln N)^2, min{eps, N^-1} N^-1 + N^-a}
inline ModelCurves model_curves(double eps, long N, double a) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("model curves need eps in (0,1)");
  if (N < 2) throw ConfigError("model curves need N >= 2");
  if (!(a > 0.0)) throw ConfigError("model curves need a > 0");
  const double n = double(N);
  const double lnN = std::log(n);
  const double lne = std::abs(std::log(eps));
  const double fine = eps * lnN * lnN / (n * n);
  ModelCurves m;
  m.nu1 = std::max(fine, eps / n + std::pow(n, -(a + 1.0) / 2.0));
  m.nu2 = std::max(eps * lne * lne * lne / (n * n), eps / n);
  m.F = std::max(fine, std::min(eps, 1.0 / n) / n + std::pow(n, -a));
  return m;
}

/// a_* = beta / (b(0) - beta); infinite when b(0) <= beta.
template <typename Scalar>
Scalar critical_mesh_parameter(const TwoPointBVP<Scalar>& bvp) {
  const Scalar b0 = bvp.coeffs.b(Scalar(0));
  const Scalar beta = bvp.coeffs.beta;
  if (!(b0 > beta)) return std::numeric_limits<Scalar>::infinity();
  return beta / (b0 - beta);
}

struct SigmaPropertyReport {
  long points{0};
  long bound_violations{0};        // 0 <= sigma <= 1, every kind
  long consistency_violations{0};  // |sigma + rho - 1| <= min{rho, rho^2}, fitted kinds
  long asi_lower_violations{0};    // sigma_ASI + rho - 1 >= 0
  long ordering_violations{0};     // sigma_ASI <= sigma_Sam
  double upwind_defect_at_half{0}; // |1 + 1/2 - 1|, exceeds min{1/2, 1/4}

  long total() const {
    return bound_violations + consistency_violations + asi_lower_violations + ordering_violations;
  }
};

/// Checks the fitting-factor inequalities on `points` log-spaced rho values
/// in [1e-8, 1e3] with an absolute slack.
inline SigmaPropertyReport sigma_property_check(long points = 10000, double slack = 1e-15) {
  SigmaPropertyReport rep;
  rep.points = points;
  const double lo = std::log(1e-8), hi = std::log(1e3);
  const FittingKind all[] = {FittingKind::Upwind, FittingKind::Samarskii,
                             FittingKind::RunchalSpalding, FittingKind::ASI};
  const FittingKind fitted[] = {FittingKind::Samarskii, FittingKind::RunchalSpalding,
                                FittingKind::ASI};
  for (long k = 0; k < points; ++k) {
    const double r = std::exp(lo + (hi - lo) * double(k) / double(points - 1));
    for (auto kind : all) {
      const double s = sigma(kind, r);
      if (s < -slack || s > 1.0 + slack) ++rep.bound_violations;
    }
    for (auto kind : fitted) {
      const double s = sigma(kind, r);
      if (std::abs(s + r - 1.0) > std::min(r, r * r) + slack) ++rep.consistency_violations;
    }
    const double asi = sigma(FittingKind::ASI, r);
    if (asi + r - 1.0 < -slack) ++rep.asi_lower_violations;
    if (asi > sigma(FittingKind::Samarskii, r) + slack) ++rep.ordering_violations;
  }
  rep.upwind_defect_at_half = std::abs(sigma(FittingKind::Upwind, 0.5) + 0.5 - 1.0);
  return rep;
}

}  // namespace layerfd
