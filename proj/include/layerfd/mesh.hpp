#pragma once

// Piecewise-uniform layer-adapted meshes. The transition point
//   xi = min{Q, (a eps / beta) ln(lambda)}
// splits [0,1] into J = Q N fine steps on [0, xi] and N - J coarse steps on
// [xi, 1]. lambda = N gives the standard Shishkin mesh, lambda = 1/eps the
// asymptotic variant.

#include "layerfd/error.hpp"
#include "layerfd/types.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace layerfd {

enum class MeshFamily { ShishkinN, AsymptoticEps };

struct Rational {
  long num{1};
  long den{2};

  template <typename Scalar>
  Scalar value() const {
    return Scalar(num) / Scalar(den);
  }
};

Rational parse_rational(const std::string& text);

struct MeshSpec {
  MeshFamily family{MeshFamily::ShishkinN};
  long N{32};
  Rational Q{1, 2};
  double a{3.0};
  double beta{0.8};

  /// J = Q N; throws ConfigError unless it is an exact integer and the
  /// remaining invariants hold.
  long transition_index() const {
    if (N < 4) throw ConfigError("mesh needs N >= 4");
    if (Q.den <= 0 || Q.num <= 0 || Q.num >= Q.den) throw ConfigError("Q must lie in (0,1)");
    if ((Q.num * N) % Q.den != 0)
      throw ConfigError("Q*N = " + std::to_string(Q.num) + "*" + std::to_string(N) + "/" +
                        std::to_string(Q.den) + " is not an integer");
    if (!(a > 0.0)) throw ConfigError("mesh parameter a must be positive");
    if (!(beta > 0.0)) throw ConfigError("beta must be positive");
    return Q.num * N / Q.den;
  }
};

template <typename Scalar>
struct Mesh {
  VectorX<Scalar> points;
  Index J{0};
  Scalar xi{0};
  Scalar h{0};
  Scalar H{0};
  bool clamped{false};

  Index N() const { return points.size() - 1; }

  /// Step h_i = x_i - x_{i-1}, 1 <= i <= N.
  Scalar step(Index i) const {
    if (i < 1 || i > N()) throw ShapeError("step index out of range");
    return points(i) - points(i - 1);
  }
};

template <typename Scalar = double>
Mesh<Scalar> build_mesh(const MeshSpec& spec, Scalar eps) {
  const long J = spec.transition_index();
  if (!(eps > Scalar(0) && eps <= Scalar(1))) throw ConfigError("eps must lie in (0,1]");

  const Scalar lambda =
      spec.family == MeshFamily::ShishkinN ? Scalar(spec.N) : Scalar(1) / eps;
  if (!(lambda > Scalar(1)))
    throw ConfigError("mesh scale lambda must exceed 1 (eps < 1 for the asymptotic mesh)");

  const Scalar Q = spec.Q.value<Scalar>();
  const Scalar candidate = Scalar(spec.a) * eps / Scalar(spec.beta) * std::log(lambda);

  Mesh<Scalar> m;
  m.J = J;
  m.points.resize(spec.N + 1);
  if (candidate >= Q) {
    m.clamped = true;
    m.xi = Q;
    m.h = m.H = Scalar(1) / Scalar(spec.N);
    for (long i = 0; i <= spec.N; ++i) m.points(i) = Scalar(i) / Scalar(spec.N);
    return m;
  }

  m.xi = candidate;
  m.h = m.xi / Scalar(J);
  m.H = (Scalar(1) - m.xi) / Scalar(spec.N - J);
  for (long i = 0; i <= J; ++i) m.points(i) = Scalar(i) * m.h;
  m.points(J) = m.xi;
  for (long i = J + 1; i < spec.N; ++i) m.points(i) = m.xi + Scalar(i - J) * m.H;
  m.points(spec.N) = Scalar(1);
  return m;
}

/// (h_i + h_{i+1}) / 2 for 1 <= i <= N-1.
template <typename Scalar>
Scalar half_step(const Mesh<Scalar>& mesh, Index i) {
  if (i < 1 || i > mesh.N() - 1) throw ShapeError("half_step index out of range");
  return (mesh.points(i + 1) - mesh.points(i - 1)) / Scalar(2);
}

}  // namespace layerfd
