// Command-line front end: solve, table, mesh, sigma-check, trunc, precond.
//
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include "layerfd/diagnostics.hpp"
#include "layerfd/harness.hpp"
#include "layerfd/tridiag.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace layerfd;

struct Options {
  std::string problem = "ex1";
  std::string method = "decomposed";
  std::string reduced = "exact";
  std::string mesh = "shishkin-n";
  std::string scheme = "asi";
  std::string eps = "1e-1:1e-9";
  std::string n = "32:1024";
  double a = 3.0;
  std::string q = "1/2";
  double beta = 0.8;
  bool precondition = false;
  std::string format = "md";
  std::string out;
  bool nodes = false;
  std::string g = "layer";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

// "1e-1,1e-3" or "1e-1:1e-9" (decade steps between the endpoints).
std::vector<double> parse_eps(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    std::vector<double> out;
    for (const auto& p : split(text, ',')) out.push_back(to_double(p));
    if (out.empty()) throw UsageError("empty --eps list");
    return out;
  }
  const double from = to_double(text.substr(0, colon));
  const double to = to_double(text.substr(colon + 1));
  if (!(from > 0 && to > 0)) throw UsageError("--eps range needs positive endpoints");
  const int k0 = static_cast<int>(std::lround(std::log10(from)));
  const int k1 = static_cast<int>(std::lround(std::log10(to)));
  std::vector<double> out;
  const int dir = k1 >= k0 ? 1 : -1;
  for (int k = k0;; k += dir) {
    out.push_back(std::pow(10.0, k));
    if (k == k1) break;
  }
  return out;
}

// "32,64" or "32:1024" (doubling).
std::vector<long> parse_n(const std::string& text) {
  auto to_long = [](const std::string& s) {
    const double v = to_double(s);
    if (v < 1 || v != std::floor(v)) throw UsageError("N must be a positive integer: '" + s + "'");
    return static_cast<long>(v);
  };
  std::vector<long> out;
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    for (const auto& p : split(text, ',')) out.push_back(to_long(p));
  } else {
    const long from = to_long(text.substr(0, colon));
    const long to = to_long(text.substr(colon + 1));
    if (to < from) throw UsageError("--n range must be increasing");
    for (long v = from; v <= to; v *= 2) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty --n list");
  return out;
}

MeshFamily parse_family(const std::string& s) {
  if (s == "shishkin-n") return MeshFamily::ShishkinN;
  if (s == "asymptotic") return MeshFamily::AsymptoticEps;
  throw UsageError("unknown mesh '" + s + "'");
}

SolveConfig make_config(const Options& o) {
  SolveConfig cfg;
  cfg.problem = parse_problem_name(o.problem);
  cfg.method = parse_method(o.method);
  cfg.reduced_mode = parse_reduced_mode(o.reduced);
  cfg.scheme = parse_fitting_kind(o.scheme);
  cfg.preconditioned = o.precondition;
  cfg.mesh.family = parse_family(o.mesh);
  cfg.mesh.Q = parse_rational(o.q);
  cfg.mesh.a = o.a;
  cfg.mesh.beta = o.beta;
  return cfg;
}

std::string sci(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error("cannot open output file " + o.out);
  f << text;
}

long single_n(const Options& o) {
  const auto ns = parse_n(o.n);
  if (ns.size() != 1) throw UsageError("this subcommand takes a single --n value");
  return ns.front();
}

double single_eps(const Options& o) {
  const auto es = parse_eps(o.eps);
  if (es.size() != 1) throw UsageError("this subcommand takes a single --eps value");
  return es.front();
}

int run_solve(const Options& o) {
  SolveConfig cfg = make_config(o);
  cfg.mesh.N = single_n(o);
  const double eps = single_eps(o);
  const auto run = solve(cfg, eps);
  std::ostringstream out;
  out << "# problem=" << o.problem << " method=" << o.method << " reduced=" << o.reduced
      << " mesh=" << o.mesh << " scheme=" << o.scheme << " eps=" << sci(eps, 2)
      << " N=" << cfg.mesh.N << " precondition=" << (o.precondition ? "on" : "off") << "\n";
  out << "error," << sci(run_error(run)) << "\n";
  if (o.nodes) {
    out << "i,x_i,U_i,u_i\n";
    const auto& u = *run.problem.exact;
    for (Index i = 0; i < run.U.size(); ++i)
      out << i << "," << sci(run.mesh.points(i), 16) << "," << sci(run.U(i), 16) << ","
          << sci(u(run.mesh.points(i)), 16) << "\n";
  }
  write_output(o, out.str());
  return 0;
}

int run_table(const Options& o) {
  const SolveConfig cfg = make_config(o);
  if (o.format != "csv" && o.format != "md") throw UsageError("--format must be csv or md");
  const auto eps_list = parse_eps(o.eps);
  const auto n_list = parse_n(o.n);
  for (long n : n_list) {
    MeshSpec spec = cfg.mesh;
    spec.N = n;
    spec.transition_index();
  }
  const auto table = convergence_table(cfg, eps_list, n_list);
  write_output(o, emit(table, o.format == "csv" ? TableFormat::CSV : TableFormat::Markdown));
  for (const auto& r : table.rows)
    if (!r.failure.empty())
      std::cerr << "cell eps=" << sci(r.eps, 2) << " N=" << r.N << " failed: " << r.failure << "\n";
  return table.any_failed() ? 1 : 0;
}

int run_mesh(const Options& o) {
  SolveConfig cfg = make_config(o);
  cfg.mesh.N = single_n(o);
  const auto mesh = build_mesh<double>(cfg.mesh, single_eps(o));
  std::ostringstream out;
  out << "i,x_i,step\n";
  for (Index i = 0; i <= mesh.N(); ++i)
    out << i << "," << sci(mesh.points(i), 10) << "," << sci(i == 0 ? 0.0 : mesh.step(i), 10)
        << "\n";
  write_output(o, out.str());
  return 0;
}

int run_sigma_check(const Options& o) {
  const auto rep = sigma_property_check();
  std::ostringstream out;
  out << "rho grid: " << rep.points << " log-spaced points in [1e-8, 1e3]\n";
  auto line = [&out](const char* name, long v) {
    out << (v == 0 ? "PASS " : "FAIL ") << name << ": " << v << " violations\n";
  };
  line("0 <= sigma <= 1 (all kinds)", rep.bound_violations);
  line("|sigma + rho - 1| <= min{rho, rho^2} (samarskii, runchal, asi)", rep.consistency_violations);
  line("sigma_asi + rho - 1 >= 0", rep.asi_lower_violations);
  line("sigma_asi <= sigma_samarskii", rep.ordering_violations);
  out << "note upwind: |sigma + rho - 1| at rho=1/2 is " << rep.upwind_defect_at_half
      << " > min{1/2, 1/4}\n";
  write_output(o, out.str());
  return rep.total() == 0 ? 0 : 1;
}

int run_trunc(const Options& o) {
  SolveConfig cfg = make_config(o);
  cfg.mesh.N = single_n(o);
  const double eps = single_eps(o);
  const auto p = builtin_problem<double>(cfg.problem, eps, cfg.mesh.beta);
  const auto mesh = build_mesh<double>(cfg.mesh, eps);
  VectorX<double> tau;
  if (o.g == "layer") {
    tau = layer_truncation_profile(p, mesh, cfg.scheme);
  } else if (o.g == "reduced") {
    const auto& u0 = *p.reduced_exact;
    tau = truncation_error<double>(
        p, mesh, cfg.scheme, u0, [&](double x) { return reduced_derivative(p, x, u0(x)); },
        [&](double x) { return reduced_second_derivative(p, x, u0(x)); });
  } else {
    throw UsageError("--g must be layer or reduced");
  }
  std::ostringstream out;
  out << "i,x_i,tau\n";
  for (Index k = 0; k < tau.size(); ++k)
    out << k + 1 << "," << sci(mesh.points(k + 1), 10) << "," << sci(tau(k), 10) << "\n";
  write_output(o, out.str());
  return 0;
}

int run_precond(const Options& o) {
  SolveConfig cfg = make_config(o);
  cfg.mesh.N = single_n(o);
  std::ostringstream out;
  out << "eps,N,kappa,kappa_scaled,max_solution_diff\n";
  for (double eps : parse_eps(o.eps)) {
    const auto run = assemble_run(cfg, eps);
    const auto scaled = precondition(run.system, run.mesh);
    const double diff =
        (thomas_solve(run.system) - thomas_solve(scaled)).cwiseAbs().maxCoeff();
    out << sci(eps, 2) << "," << cfg.mesh.N << "," << sci(inf_condition_estimate(run.system), 4)
        << "," << sci(inf_condition_estimate(scaled), 4) << "," << sci(diff, 2) << "\n";
  }
  write_output(o, out.str());
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--problem", o.problem, "ex1 | ex2")->check(CLI::IsMember({"ex1", "ex2"}));
  sub->add_option("--method", o.method, "direct | decomposed")
      ->check(CLI::IsMember({"direct", "decomposed"}));
  sub->add_option("--reduced", o.reduced, "exact | rk4")->check(CLI::IsMember({"exact", "rk4"}));
  sub->add_option("--mesh", o.mesh, "shishkin-n | asymptotic")
      ->check(CLI::IsMember({"shishkin-n", "asymptotic"}));
  sub->add_option("--scheme", o.scheme, "upwind | samarskii | runchal | asi | exactfit")
      ->check(CLI::IsMember({"upwind", "samarskii", "runchal", "asi", "exactfit"}));
  sub->add_option("--eps", o.eps, "list (1e-2,1e-4) or decade range (1e-1:1e-9)");
  sub->add_option("--n", o.n, "list (32,64) or doubling range (32:1024)");
  sub->add_option("--a", o.a, "mesh parameter a");
  sub->add_option("--q", o.q, "transition fraction Q as p/q");
  sub->add_option("--beta", o.beta, "lower bound parameter beta");
  sub->add_flag("--precondition", o.precondition, "scale the fine-mesh rows before solving");
  sub->add_option("--out", o.out, "write output to a file");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Fitted finite-difference solver for 1-D convection-diffusion with a boundary layer"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "one run: max error, optional nodal CSV");
  add_common(solve_cmd, o);
  solve_cmd->add_flag("--nodes", o.nodes, "print nodal values");

  auto* table_cmd = app.add_subcommand("table", "convergence table over eps and N");
  add_common(table_cmd, o);
  table_cmd->add_option("--format", o.format, "csv | md")->check(CLI::IsMember({"csv", "md"}));

  auto* mesh_cmd = app.add_subcommand("mesh", "dump mesh as CSV i,x_i,step");
  add_common(mesh_cmd, o);

  auto* sigma_cmd = app.add_subcommand("sigma-check", "fitting-factor inequality report");
  sigma_cmd->add_option("--out", o.out, "write output to a file");

  auto* trunc_cmd = app.add_subcommand("trunc", "truncation profile CSV i,x_i,tau");
  add_common(trunc_cmd, o);
  trunc_cmd->add_option("--g", o.g, "layer | reduced")->check(CLI::IsMember({"layer", "reduced"}));

  auto* precond_cmd = app.add_subcommand("precond", "condition numbers with and without row scaling");
  add_common(precond_cmd, o);

  // Single-value subcommands get single-value defaults.
  for (auto* sub : {solve_cmd, mesh_cmd, trunc_cmd}) {
    sub->preparse_callback([&o](std::size_t) {
      o.eps = "1e-3";
      o.n = "32";
    });
  }
  precond_cmd->preparse_callback([&o](std::size_t) {
    o.eps = "1e-2:1e-9";
    o.n = "64";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*solve_cmd) return run_solve(o);
    if (*table_cmd) return run_table(o);
    if (*mesh_cmd) return run_mesh(o);
    if (*sigma_cmd) return run_sigma_check(o);
    if (*trunc_cmd) return run_trunc(o);
    if (*precond_cmd) return run_precond(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
