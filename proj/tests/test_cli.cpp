#include <doctest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(LAYERFD_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string line(const std::string& text, int index) {
  std::istringstream in(text);
  std::string l;
  for (int k = 0; k <= index; ++k) std::getline(in, l);
  return l;
}

}  // namespace

TEST_CASE("cli mesh dump") {
  const auto r = run("mesh --mesh shishkin-n --eps 1e-3 --n 32");
  CHECK(r.code == 0);
  CHECK(line(r.out, 0) == "i,x_i,step");
  const std::string row16 = line(r.out, 17);
  CHECK(row16.rfind("16,", 0) == 0);
  CHECK(std::stod(row16.substr(3)) == doctest::Approx(0.0129965).epsilon(1e-6));
}

TEST_CASE("cli sigma-check") {
  const auto r = run("sigma-check");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli table reproduces the default layout deterministically") {
  const auto a = run("table");
  const auto b = run("table --problem ex1 --method decomposed --scheme asi --mesh shishkin-n "
                     "--eps 1e-1:1e-9 --n 32:1024");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == run("table").out);
  CHECK(line(a.out, 2).rfind("| 1e-01 | 1.27E-04 |", 0) == 0);
  const auto csv = run("table --format csv --eps 1e-2 --n 32,64");
  CHECK(line(csv.out, 0) == "eps,N,error,rate,nu1,nu2,F");
  CHECK(line(csv.out, 3).empty());
}

TEST_CASE("cli solve, trunc and precond") {
  const auto s = run("solve --problem ex2 --method direct --eps 1e-2 --n 32 --nodes");
  CHECK(s.code == 0);
  CHECK(s.out.find("i,x_i,U_i,u_i") != std::string::npos);
  const auto t = run("trunc --eps 1e-3 --n 32 --g layer");
  CHECK(t.code == 0);
  CHECK(line(t.out, 0) == "i,x_i,tau");
  CHECK(line(t.out, 31).rfind("31,", 0) == 0);
  const auto p = run("precond");
  CHECK(p.code == 0);
  CHECK(line(p.out, 8).rfind("1.00e-09,64,", 0) == 0);
}

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("table --scheme central").code == 2);
  CHECK(run("table --q 1/3").code == 2);
  CHECK(run("mesh --eps 1e-3,1e-4").code == 2);
  CHECK(run("table --eps abc").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("cli computational failure exits with 1") {
  CHECK(run("table --mesh asymptotic --eps 1 --n 32").code == 1);
  CHECK(run("solve --problem ex1 --reduced exact --mesh asymptotic --eps 1 --n 32").code == 2);
}
