#include "layerfd/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace layerfd {

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string csv(const ConvergenceTable& table) {
  std::string out = "eps,N,error,rate,nu1,nu2,F\n";
  for (const auto& r : table.rows) {
    out += format("%.16e", r.eps) + "," + std::to_string(r.N) + ",";
    out += r.failure.empty() ? format("%.16e", r.error) : std::string("nan");
    out += ",";
    if (r.rate) out += format("%.16e", *r.rate);
    for (double v : r.curves ? std::vector<double>{r.curves->nu1, r.curves->nu2, r.curves->F}
                             : std::vector<double>{})
      out += "," + format("%.16e", v);
    if (!r.curves) out += ",,,";
    out += "\n";
  }
  return out;
}

// eps rows, N columns, rates on the line under the errors.
std::string markdown(const ConvergenceTable& table) {
  std::vector<double> eps_order;
  std::vector<long> n_order;
  for (const auto& r : table.rows) {
    if (std::find(eps_order.begin(), eps_order.end(), r.eps) == eps_order.end())
      eps_order.push_back(r.eps);
    if (std::find(n_order.begin(), n_order.end(), r.N) == n_order.end()) n_order.push_back(r.N);
  }
  std::ostringstream out;
  out << "| ε |";
  for (long n : n_order) out << " N=" << n << " |";
  out << "\n|---|";
  for (std::size_t k = 0; k < n_order.size(); ++k) out << "---|";
  out << "\n";
  for (double eps : eps_order) {
    out << "| " << format("%.0e", eps) << " |";
    for (long n : n_order) {
      const auto* r = table.find(eps, n);
      if (!r)
        out << "  |";
      else if (!r->failure.empty())
        out << " failed |";
      else
        out << " " << format("%.2E", r->error) << " |";
    }
    out << "\n|  |";
    for (long n : n_order) {
      const auto* r = table.find(eps, n);
      out << " " << (r && r->rate ? format("%.2f", *r->rate) : std::string()) << " |";
    }
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::string emit(const ConvergenceTable& table, TableFormat fmt) {
  return fmt == TableFormat::CSV ? csv(table) : markdown(table);
}

ConvergenceTable parse_csv_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "eps,N,error,rate,nu1,nu2,F")
    throw ConfigError("not a convergence table CSV");
  ConvergenceTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw ConfigError("malformed CSV row: " + line);
    ConvergenceRow r;
    r.eps = std::stod(f[0]);
    r.N = std::stol(f[1]);
    if (f[2] == "nan")
      r.failure = "failed";
    else
      r.error = std::stod(f[2]);
    if (!f[3].empty()) r.rate = std::stod(f[3]);
    if (!f[4].empty()) r.curves = ModelCurves{std::stod(f[4]), std::stod(f[5]), std::stod(f[6])};
    table.rows.push_back(std::move(r));
  }
  return table;
}

}  // namespace layerfd
