#include "layerfd/harness.hpp"
#include "layerfd/mesh.hpp"
#include "layerfd/problems.hpp"
#include "layerfd/reduced.hpp"
#include "layerfd/scheme.hpp"

#include <charconv>
#include <string>

namespace layerfd {

namespace {
[[noreturn]] void unknown(std::string_view what, std::string_view name) {
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(name) + "'");
}
}  // namespace

ProblemName parse_problem_name(std::string_view name) {
  if (name == "ex1") return ProblemName::Ex1;
  if (name == "ex2") return ProblemName::Ex2;
  unknown("problem", name);
}

std::string_view to_string(ProblemName name) {
  return name == ProblemName::Ex1 ? "ex1" : "ex2";
}

FittingKind parse_fitting_kind(std::string_view name) {
  if (name == "upwind") return FittingKind::Upwind;
  if (name == "samarskii") return FittingKind::Samarskii;
  if (name == "runchal") return FittingKind::RunchalSpalding;
  if (name == "asi") return FittingKind::ASI;
  if (name == "exactfit") return FittingKind::ExactFit;
  unknown("scheme", name);
}

std::string_view to_string(FittingKind kind) {
  switch (kind) {
    case FittingKind::Upwind: return "upwind";
    case FittingKind::Samarskii: return "samarskii";
    case FittingKind::RunchalSpalding: return "runchal";
    case FittingKind::ASI: return "asi";
    case FittingKind::ExactFit: return "exactfit";
  }
  return "?";
}

ReducedMode parse_reduced_mode(std::string_view name) {
  if (name == "exact") return ReducedMode::Exact;
  if (name == "rk4") return ReducedMode::RK4;
  unknown("reduced mode", name);
}

std::string_view to_string(ReducedMode mode) {
  return mode == ReducedMode::Exact ? "exact" : "rk4";
}

Method parse_method(std::string_view name) {
  if (name == "direct") return Method::Direct;
  if (name == "decomposed") return Method::Decomposed;
  unknown("method", name);
}

std::string_view to_string(Method method) {
  return method == Method::Direct ? "direct" : "decomposed";
}

Rational parse_rational(const std::string& text) {
  Rational q;
  const auto slash = text.find('/');
  auto parse_long = [&text](std::string_view part) {
    long v = 0;
    const auto* end = part.data() + part.size();
    const auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (ec != std::errc{} || ptr != end || part.empty())
      throw ConfigError("'" + text + "' is not a rational of the form p/q");
    return v;
  };
  const std::string_view sv(text);
  if (slash == std::string::npos) {
    q.num = parse_long(sv);
    q.den = 1;
  } else {
    q.num = parse_long(sv.substr(0, slash));
    q.den = parse_long(sv.substr(slash + 1));
  }
  if (q.den <= 0 || q.num <= 0 || q.num >= q.den) throw ConfigError("Q must be a rational in (0,1)");
  return q;
}

}  // namespace layerfd
