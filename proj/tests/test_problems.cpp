#include "layerfd/harness.hpp"
#include "layerfd/problems.hpp"
#include "layerfd/tridiag.hpp"

#include <doctest.h>

#include <cmath>

using namespace layerfd;

namespace {

TwoPointBVP<double> homogeneous_problem(double eps) {
  TwoPointBVP<double> p;
  p.eps = eps;
  p.coeffs.b = [](double) { return 1.0; };
  p.coeffs.c = [](double) { return 0.0; };
  p.coeffs.f = [](double) { return 0.0; };
  p.coeffs.db = p.coeffs.dc = p.coeffs.df = [](double) { return 0.0; };
  return p;
}

}  // namespace

TEST_CASE("builtin problems carry their closed forms") {
  for (double eps : {1.0, 1e-1, 1e-4, 1e-9}) {
    const auto p1 = builtin_problem(ProblemName::Ex1, eps);
    CHECK((*p1.reduced_exact)(1.0) == 0.0);
    CHECK(std::abs((*p1.exact)(0.0)) <= 1e-12);
    CHECK(std::abs((*p1.exact)(1.0)) <= 1e-12);

    const auto p2 = builtin_problem(ProblemName::Ex2, eps);
    CHECK((*p2.exact)(1.0) == doctest::Approx(0.0));
    CHECK((*p2.exact)(0.0) == doctest::Approx(2.0));
    CHECK(*p2.exact_du0 == doctest::Approx(-2.0 - 1.0 / eps));
  }
}

TEST_CASE("builtin_problem rejects eps outside (0,1]") {
  CHECK_THROWS_AS(builtin_problem(ProblemName::Ex1, 0.0), ConfigError);
  CHECK_THROWS_AS(builtin_problem(ProblemName::Ex1, 1.5), ConfigError);
  CHECK_THROWS_AS(builtin_problem(ProblemName::Ex2, -1e-3), ConfigError);
  CHECK_THROWS_AS(parse_problem_name("ex3"), ConfigError);
}

TEST_CASE("ex1 closed form satisfies the differential equation") {
  // Residual of -eps u'' - u' + 2u - exp(x-1) with u'' from a centered
  // difference of the analytic u'.
  for (double eps : {1.0, 0.5, 1e-1, 1e-2}) {
    const detail::Ex1Exact<double> u(eps);
    const double d = 1e-6;
    for (double x = 0.05; x < 1.0; x += 0.05) {
      const double upp = (u.du(x + d) - u.du(x - d)) / (2 * d);
      const double res = -eps * upp - u.du(x) + 2 * u(x) - std::exp(x - 1);
      CHECK(std::abs(res) < 1e-6);
    }
  }
}

TEST_CASE("ex1 closed form agrees with a fine reference solve at eps = 1") {
  SolveConfig cfg;
  cfg.method = Method::Direct;
  cfg.mesh.N = 1 << 16;
  const auto run = solve(cfg, 1.0);
  CHECK(run.mesh.clamped);
  CHECK(max_error(run.U, *run.problem.exact, run.mesh) <= 1e-8);
}

TEST_CASE("ex1 exact derivative at 0 matches a difference quotient") {
  for (double eps : {1e-1, 1e-2}) {
    const auto p = builtin_problem(ProblemName::Ex1, eps);
    const double d = 1e-7 * eps;
    const double fd = ((*p.exact)(d) - (*p.exact)(0.0)) / d;
    CHECK(*p.exact_du0 == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("reduced derivatives") {
  const auto p1 = builtin_problem(ProblemName::Ex1, 1e-3);
  CHECK(reduced_derivative(p1, 1.0, 0.0) == doctest::Approx(-1.0));
  CHECK(reduced_second_derivative(p1, 1.0, 0.0) == doctest::Approx(-3.0));

  const auto p2 = builtin_problem(ProblemName::Ex2, 1e-3);
  CHECK(reduced_derivative(p2, 0.0, 1.0) == doctest::Approx(-1.0));
  for (double x = 0.0; x < 1.0; x += 0.01)
    CHECK(std::abs(reduced_second_derivative(p2, x, 1.0 - x)) < 1e-12);
  CHECK_THROWS_AS(reduced_derivative(p2, 1.0, 0.0), SingularCoefficientError);
  CHECK_THROWS_AS(reduced_second_derivative(p2, 1.0, 0.0), SingularCoefficientError);

  auto p0 = homogeneous_problem(1e-2);
  CHECK(reduced_derivative(p0, 0.3, 7.0) == 0.0);
  p0.coeffs.f = [](double) { return 2.0; };
  CHECK(reduced_second_derivative(p0, 0.3, 7.0) == 0.0);
}

TEST_CASE("closed-form reduced solutions satisfy the reduced equation") {
  const auto ex1_du0 = [](double x) { return std::exp(x - 1) - 2 * std::exp(2 * (x - 1)); };
  const auto ex2_du0 = [](double) { return -1.0; };
  for (auto [name, du0] : {std::pair{ProblemName::Ex1, ScalarFn<double>(ex1_du0)},
                           std::pair{ProblemName::Ex2, ScalarFn<double>(ex2_du0)}}) {
    const auto p = builtin_problem(name, 1e-3);
    const auto& u0 = *p.reduced_exact;
    double worst = 0;
    for (int k = 0; k <= 1000; ++k) {
      const double x = k / 1000.0;
      worst = std::max(worst, std::abs(-p.coeffs.b(x) * du0(x) + p.coeffs.c(x) * u0(x) -
                                       p.coeffs.f(x)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("reduced second derivative matches centered differences of u0") {
  const auto p = builtin_problem(ProblemName::Ex1, 1e-3);
  const auto& u0 = *p.reduced_exact;
  const double d = 1e-4;
  for (double x = 0.05; x < 0.96; x += 0.05) {
    const double fd = (u0(x + d) - 2 * u0(x) + u0(x - d)) / (d * d);
    CHECK(reduced_second_derivative(p, x, u0(x)) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("w-problem boundary values and right-hand side") {
  const auto p1 = builtin_problem(ProblemName::Ex1, 1e-3);
  VectorX<double> u0(9), u0pp(9);
  for (int i = 0; i <= 8; ++i) {
    u0(i) = (*p1.reduced_exact)(i / 8.0);
    u0pp(i) = 1.0;
  }
  const auto w1 = make_w_problem(p1, u0, u0pp);
  CHECK(w1.w0 == doctest::Approx(-0.232544157934829629701524275189));
  CHECK(w1.w1 == 0.0);
  CHECK(w1.rhs()(4) == doctest::Approx(1e-3));

  const auto p2 = builtin_problem(ProblemName::Ex2, 1e-3);
  for (int i = 0; i <= 8; ++i) {
    u0(i) = 1.0 - i / 8.0;
    u0pp(i) = 0.0;
  }
  const auto w2 = make_w_problem(p2, u0, u0pp);
  CHECK(w2.w0 == doctest::Approx(1.0));
  CHECK(w2.w1 == 0.0);
  const VectorX<double> r = w2.rhs();
  CHECK(r.segment(1, 7).cwiseAbs().maxCoeff() == 0.0);

  auto p0 = homogeneous_problem(1e-2);
  p0.g0 = 3.0;
  p0.g1 = -1.0;
  const auto w0 = make_w_problem(p0, VectorX<double>(VectorX<double>::Zero(9)), VectorX<double>(VectorX<double>::Zero(9)));
  CHECK(w0.w0 == 3.0);
  CHECK(w0.w1 == -1.0);
  CHECK(w0.rhs().segment(1, 7).isZero());

  CHECK_THROWS_AS(make_w_problem(p0, VectorX<double>(VectorX<double>::Zero(9)), VectorX<double>(VectorX<double>::Zero(8))),
                  ShapeError);
}

TEST_CASE("w-system plus u0 reproduces the boundary values of the direct solve") {
  for (auto name : {ProblemName::Ex1, ProblemName::Ex2}) {
    SolveConfig cfg;
    cfg.problem = name;
    cfg.mesh.N = 64;
    cfg.method = Method::Direct;
    const auto direct = solve(cfg, 1e-4);
    cfg.method = Method::Decomposed;
    const auto dec = solve(cfg, 1e-4);
    CHECK(dec.U(0) == direct.U(0));
    CHECK(dec.U(64) == direct.U(64));
  }
}

TEST_CASE("layer component") {
  const auto p = builtin_problem(ProblemName::Ex2, 0.1);
  CHECK(*p.exact_du0 == doctest::Approx(-12.0));
  CHECK(layer_component(p, 0.0) == doctest::Approx(1.2));
  CHECK(layer_component(p, 0.1) == doctest::Approx(0.441455329405730785914628524194));

  const auto q = builtin_problem(ProblemName::Ex1, 1e-3);
  CHECK(layer_component(q, 0.0) == doctest::Approx(-1e-3 * *q.exact_du0));
  CHECK(layer_component(q, 1.0) == 0.0);

  auto r = homogeneous_problem(0.1);
  CHECK_THROWS_AS(layer_component(r, 0.0), UnsupportedProblemError);
}

TEST_CASE("coefficient validation") {
  auto p = homogeneous_problem(0.1);
  CHECK_NOTHROW(validate_problem(p));
  p.coeffs.c = [](double x) { return x - 0.5; };
  p.coeffs.dc = [](double) { return 1.0; };
  CHECK_THROWS_AS(validate_problem(p), AssumptionError);

  p = homogeneous_problem(0.1);
  p.coeffs.b = [](double x) { return 0.5 - x; };
  p.coeffs.db = [](double) { return -1.0; };
  CHECK_THROWS_AS(validate_problem(p), AssumptionError);

  p = homogeneous_problem(0.1);
  p.coeffs.f = [](double x) { return x * x; };
  CHECK_THROWS_AS(validate_problem(p), AssumptionError);  // df left at 0

  p = homogeneous_problem(0.1);
  p.exact = [](double) { return 1.0; };
  CHECK_THROWS_AS(validate_problem(p), ConfigError);
}
