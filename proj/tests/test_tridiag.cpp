#include "layerfd/harness.hpp"
#include "layerfd/tridiag.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace layerfd;

namespace {

TridiagonalSystem<double> identity(Index n) {
  auto s = TridiagonalSystem<double>::zeros(n);
  s.diag.setOnes();
  return s;
}

}  // namespace

TEST_CASE("Thomas on small systems") {
  auto id = identity(4);
  id.rhs << 1, -2, 3, 0.5;
  CHECK(thomas_solve(id) == id.rhs);

  auto s = TridiagonalSystem<double>::zeros(3);
  s.sub << 0, -1, -1;
  s.diag << 2, 2, 2;
  s.sup << -1, -1, 0;
  s.rhs << 1, 0, 1;
  const VectorX<double> x = thomas_solve(s);
  CHECK(x(0) == doctest::Approx(1.0));
  CHECK(x(1) == doctest::Approx(1.0));
  CHECK(x(2) == doctest::Approx(1.0));

  s.diag(0) = 0.0;
  CHECK_THROWS_AS(thomas_solve(s), SingularSystemError);
  auto z = TridiagonalSystem<double>::zeros(3);
  CHECK_THROWS_AS(thomas_solve(z), SingularSystemError);
}

TEST_CASE("apply_operator") {
  auto s = TridiagonalSystem<double>::zeros(3);
  s.sub << 0, -1, -1;
  s.diag << 2, 2, 2;
  s.sup << -1, -1, 0;
  CHECK(apply_operator(s, VectorX<double>(VectorX<double>::Zero(3))).isZero());
  CHECK_THROWS_AS(apply_operator(s, VectorX<double>(VectorX<double>::Zero(4))), ShapeError);
  const VectorX<double> r = apply_operator(s, VectorX<double>(VectorX<double>::Ones(3)));
  CHECK(r(0) == 1.0);
  CHECK(r(1) == 0.0);
  CHECK(r(2) == 1.0);
}

TEST_CASE("solve then apply on random diagonally dominant systems") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> margin(0.1, 2.0);
  std::uniform_int_distribution<int> size(1, 256);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = size(rng);
    auto s = TridiagonalSystem<double>::zeros(n);
    for (Index i = 0; i < n; ++i) {
      s.sub(i) = i > 0 ? off(rng) : 0.0;
      s.sup(i) = i + 1 < n ? off(rng) : 0.0;
      const double sign = off(rng) < 0 ? -1.0 : 1.0;
      s.diag(i) = sign * (std::abs(s.sub(i)) + std::abs(s.sup(i)) + margin(rng));
      s.rhs(i) = 10.0 * off(rng);
    }
    const VectorX<double> x = thomas_solve(s);
    const double residual = (apply_operator(s, x) - s.rhs).cwiseAbs().maxCoeff();
    const double scale = inf_norm(s) * x.cwiseAbs().maxCoeff() + s.rhs.cwiseAbs().maxCoeff();
    CHECK(residual <= 1e-10 * scale);
  }
}

TEST_CASE("M-matrix report") {
  CHECK(is_m_matrix(identity(5)).ok);

  auto s = TridiagonalSystem<double>::zeros(3);
  s.sub << 0, -1, -1;
  s.diag << 2, 2, 2;
  s.sup << -1, 1, 0;
  const auto rep = is_m_matrix(s);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.first_violation.has_value());
  CHECK(*rep.first_violation == 1);

  // weakly dominant everywhere, strictly nowhere
  auto w = TridiagonalSystem<double>::zeros(3);
  w.sub << 0, -1, -1;
  w.diag << 1, 2, 1;
  w.sup << -1, -1, 0;
  CHECK_FALSE(is_m_matrix(w).ok);
}

TEST_CASE("assembled systems are M-matrices with nonnegative inverses") {
  for (auto problem : {ProblemName::Ex1, ProblemName::Ex2})
    for (auto family : {MeshFamily::ShishkinN, MeshFamily::AsymptoticEps})
      for (auto kind : {FittingKind::Upwind, FittingKind::Samarskii, FittingKind::RunchalSpalding,
                        FittingKind::ASI, FittingKind::ExactFit})
        for (long N : {32L, 128L})
          for (int k = 1; k <= 9; ++k) {
            const double eps = std::pow(10.0, -k);
            SolveConfig cfg;
            cfg.problem = problem;
            cfg.method = Method::Direct;
            cfg.scheme = kind;
            cfg.mesh.family = family;
            cfg.mesh.N = N;
            const auto run = assemble_run(cfg, eps);
            CAPTURE(eps);
            CAPTURE(N);
            CHECK(is_m_matrix(run.system).ok);
            CHECK(is_m_matrix(precondition(run.system, run.mesh)).ok);
            CHECK(dense_inverse(run.system).minCoeff() >= -1e-12);
          }
}

TEST_CASE("condition numbers") {
  CHECK(inf_condition_estimate(identity(7)) == doctest::Approx(1.0));

  SolveConfig cfg;
  cfg.mesh.N = 64;
  const auto a = assemble_run(cfg, 1e-2);
  const auto b = assemble_run(cfg, 1e-8);
  const double ka = inf_condition_estimate(a.system), kb = inf_condition_estimate(b.system);
  CHECK(kb / ka >= 1e3);
  const double sa = inf_condition_estimate(precondition(a.system, a.mesh));
  const double sb = inf_condition_estimate(precondition(b.system, b.mesh));
  CHECK(std::max(sa, sb) / std::min(sa, sb) < 10.0);

  auto big = identity(5000);
  CHECK_THROWS_AS(dense_inverse(big), ConfigError);
}
