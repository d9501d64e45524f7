#pragma once

// End-to-end solves (direct and decomposed), error measurement and
// convergence tables over an (eps, N) grid.

#include "layerfd/diagnostics.hpp"
#include "layerfd/mesh.hpp"
#include "layerfd/problems.hpp"
#include "layerfd/reduced.hpp"
#include "layerfd/scheme.hpp"
#include "layerfd/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace layerfd {

enum class Method { Direct, Decomposed };

Method parse_method(std::string_view name);
std::string_view to_string(Method method);

struct SolveConfig {
  ProblemName problem{ProblemName::Ex1};
  Method method{Method::Decomposed};
  ReducedMode reduced_mode{ReducedMode::Exact};  // ignored by Direct
  MeshSpec mesh{};
  FittingKind scheme{FittingKind::ASI};
  bool preconditioned{false};
};

struct SolveResult {
  TwoPointBVP<double> problem;
  Mesh<double> mesh;
  VectorX<double> U;                            // nodal approximation of u
  std::optional<ReducedData<double>> reduced;   // Decomposed only
  std::optional<VectorX<double>> W;             // Decomposed only
};

/// Unscaled discrete system for one run, before solving.
struct AssembledRun {
  TwoPointBVP<double> problem;
  Mesh<double> mesh;
  TridiagonalSystem<double> system;
  std::optional<ReducedData<double>> reduced;  // Decomposed only
};

AssembledRun assemble_run(const SolveConfig& cfg, double eps);

/// Direct: L^N U = f, U_0 = g0, U_N = g1.
/// Decomposed: L^N W = eps u0'', W_0 = g0 - u0(0), W_N = g1 - u0(1),
/// returning U = u0 + W. The preconditioned flag scales the fine rows first.
SolveResult solve(const SolveConfig& cfg, double eps);

/// max_i |U_i - exact(x_i)| over all nodes.
double max_error(const VectorX<double>& U, const ScalarFn<double>& exact, const Mesh<double>& mesh);

/// Error of one run as reported in convergence tables: for Decomposed runs
/// W is compared with u - u0 (closed-form u0), for Direct runs U with u.
double run_error(const SolveResult& run);

/// (ln E_coarse - ln E_fine) / ln 2.
double convergence_rate(double error_coarse, double error_fine);

struct ConvergenceRow {
  double eps{0};
  long N{0};
  double error{0};
  std::optional<double> rate;
  std::optional<ModelCurves> curves;
  std::string failure;  // non-empty when the cell raised an error
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  bool any_failed() const;
  const ConvergenceRow* find(double eps, long N) const;
};

/// One row per (eps, N) in input order; cells run on `workers` threads
/// (0 = hardware concurrency) and the result does not depend on the count.
ConvergenceTable convergence_table(const SolveConfig& cfg, const std::vector<double>& eps_list,
                                   const std::vector<long>& N_list, unsigned workers = 0);

/// Fills rate fields from errors already in the table.
void attach_rates(ConvergenceTable& table);

enum class TableFormat { CSV, Markdown };

std::string emit(const ConvergenceTable& table, TableFormat format);
ConvergenceTable parse_csv_table(const std::string& text);

}  // namespace layerfd
