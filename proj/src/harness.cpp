#include "layerfd/harness.hpp"

#include "layerfd/tridiag.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace layerfd {

AssembledRun assemble_run(const SolveConfig& cfg, double eps) {
  AssembledRun run;
  run.problem = builtin_problem<double>(cfg.problem, eps, cfg.mesh.beta);
  run.mesh = build_mesh<double>(cfg.mesh, eps);
  const auto& p = run.problem;
  const auto& mesh = run.mesh;

  if (cfg.method == Method::Direct) {
    const VectorX<double> f = mesh.points.unaryExpr(p.coeffs.f);
    run.system = assemble(f, p, mesh, cfg.scheme, {p.g0, p.g1});
    return run;
  }
  auto reduced = reduced_nodal_data(p, mesh, cfg.reduced_mode);
  const auto wp = make_w_problem(p, reduced.u0, reduced.u0pp);
  run.system = assemble(wp.rhs(), p, mesh, cfg.scheme, {wp.w0, wp.w1});
  run.reduced = std::move(reduced);
  return run;
}

SolveResult solve(const SolveConfig& cfg, double eps) {
  AssembledRun assembled = assemble_run(cfg, eps);
  SolveResult run;
  TridiagonalSystem<double> sys = std::move(assembled.system);
  if (cfg.preconditioned) sys = precondition(std::move(sys), assembled.mesh);
  VectorX<double> x = thomas_solve(sys);
  run.problem = std::move(assembled.problem);
  run.mesh = std::move(assembled.mesh);
  if (assembled.reduced) {
    run.U = assembled.reduced->u0 + x;
    run.W = std::move(x);
    run.reduced = std::move(assembled.reduced);
  } else {
    run.U = std::move(x);
  }
  return run;
}

double max_error(const VectorX<double>& U, const ScalarFn<double>& exact, const Mesh<double>& mesh) {
  if (U.size() != mesh.points.size()) throw ShapeError("solution length does not match the mesh");
  double worst = 0.0;
  for (Index i = 0; i < U.size(); ++i)
    worst = std::max(worst, std::abs(U(i) - exact(mesh.points(i))));
  return worst;
}

double run_error(const SolveResult& run) {
  const auto& p = run.problem;
  if (!p.exact) throw ConfigError("problem has no exact solution to measure against");
  const auto& u = *p.exact;
  if (run.W && p.reduced_exact) {
    const auto& u0 = *p.reduced_exact;
    return max_error(*run.W, [&](double x) { return u(x) - u0(x); }, run.mesh);
  }
  return max_error(run.U, u, run.mesh);
}

double convergence_rate(double error_coarse, double error_fine) {
  return (std::log(error_coarse) - std::log(error_fine)) / std::log(2.0);
}

bool ConvergenceTable::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.failure.empty(); });
}

const ConvergenceRow* ConvergenceTable::find(double eps, long N) const {
  for (const auto& r : rows)
    if (r.eps == eps && r.N == N) return &r;
  return nullptr;
}

void attach_rates(ConvergenceTable& table) {
  for (auto& row : table.rows) {
    row.rate.reset();
    if (!row.failure.empty() || row.N % 2 != 0) continue;
    const auto* coarse = table.find(row.eps, row.N / 2);
    if (coarse && coarse->failure.empty() && coarse->error > 0.0 && row.error > 0.0)
      row.rate = convergence_rate(coarse->error, row.error);
  }
}

ConvergenceTable convergence_table(const SolveConfig& cfg, const std::vector<double>& eps_list,
                                   const std::vector<long>& N_list, unsigned workers) {
  ConvergenceTable table;
  for (double eps : eps_list)
    for (long N : N_list) {
      ConvergenceRow row;
      row.eps = eps;
      row.N = N;
      table.rows.push_back(row);
    }

  auto run_cell = [&cfg](ConvergenceRow& row) {
    try {
      SolveConfig c = cfg;
      c.mesh.N = row.N;
      row.error = run_error(solve(c, row.eps));
      if (row.eps < 1.0) row.curves = model_curves(row.eps, row.N, cfg.mesh.a);
    } catch (const std::exception& e) {
      row.failure = e.what();
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(table.rows.size()));
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t k = next++; k < table.rows.size(); k = next++) run_cell(table.rows[k]);
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }

  attach_rates(table);
  return table;
}

}  // namespace layerfd
