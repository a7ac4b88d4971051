#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "geores/io.hpp"

using namespace geores;

namespace {

const char* DIAG =
    "# diagonal pair\n"
    "field 23\n"
    "vars x1 x2\n"
    "eq x1^2 - 2\n"
    "eq x2^2 - 3\n";

struct RunResult {
  int exit_code;
  std::string out;
};

// run the installed binary (path via GEORES_CLI) and capture stdout
RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("GEORES_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string write_fixture(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

} // namespace

TEST_CASE("sparse grammar") {
  SystemFile sf = parse_system(DIAG);
  CHECK(sf.ctx->p == 23);
  CHECK(sf.vars == std::vector<std::string>{"x1", "x2"});
  CHECK(sf.eqs.arity == 2);
  CHECK(sf.eqs.outputs.size() == 2);
  CHECK(sf.degrees == std::vector<int>{2, 2});
  auto x = std::vector<Fq>{Fq::from_int(sf.ctx, 5), Fq::from_int(sf.ctx, 7)};
  for (auto& v : evaluate(sf.eqs, x)) CHECK(v.is_zero());

  SystemFile m = parse_system("field 7\nvars x y\neq 3*x^2*y - 2x + y - 1\n");
  CHECK(m.degrees == std::vector<int>{3});
  auto pt = std::vector<Fq>{Fq::from_int(m.ctx, 2), Fq::from_int(m.ctx, 3)};
  // 3*4*3 - 4 + 3 - 1 = 34 = 6 mod 7
  CHECK(evaluate(m.eqs, pt)[0] == Fq::from_int(m.ctx, 6));
}

TEST_CASE("gate-list grammar") {
  SystemFile sf = parse_system(
      "field 23\n"
      "inputs x\n"
      "g1 = mul x x\n"
      "out g1\n");
  CHECK(measure(sf.eqs).L == 1);
  CHECK(sf.degrees == std::vector<int>{2});
  std::vector<Fq> four{Fq::from_int(sf.ctx, 4)};
  CHECK(evaluate(sf.eqs, four)[0] == Fq::from_int(sf.ctx, 16));
}

TEST_CASE("parse errors carry position") {
  CHECK_THROWS_WITH_AS(parse_system("field 24\nvars x\neq x\n"),
                       "line 1, col 9: field modulus 24 is not prime", ParseError);
  try {
    parse_system("field 23\nvars x\neq x + y\n");
    FAIL("undeclared identifier accepted");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("undeclared identifier 'y'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_system("field 23\nvars x\neq x + + 1\n"), ParseError);
  CHECK_THROWS_AS(parse_system("field 23\nvars x\n"), ParseError); // no equations
  CHECK_THROWS_AS(parse_system("vars x\neq x\n"), ParseError);     // no field
}

TEST_CASE("resolution JSON round-trips bit-exactly") {
  SystemFile sf = parse_system(DIAG);
  SolverConfig cfg;
  cfg.seed = 7;
  SolveResult sr = solve(sf.eqs, sf.ctx, cfg);
  json j = resolution_json(sr.res, 7, &sr.log);
  GeometricResolution back = resolution_from_json(j);
  CHECK(resolution_json(back, 7, &sr.log).dump() == j.dump());
  CHECK(validate(back, sf.eqs, Rng(99)).ok);
}

TEST_CASE("solve subcommand") {
  auto f = write_fixture("cli_diag.sys", DIAG);
  auto r = run_cli("solve --seed 7 " + f);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["degree"] == 4);
  CHECK(j["points"].size() == 4);
  CHECK(j["points"][0] == json::array({"5", "7"}));
  CHECK(j["seed"] == "7");

  // byte-identical reruns under the same seed
  auto r2 = run_cli("solve --seed 7 " + f);
  CHECK(r2.out == r.out);

  // solve output passes verify
  auto jf = write_fixture("cli_diag.json", r.out);
  CHECK(run_cli("verify " + jf + " " + f).exit_code == 0);

  auto re = run_cli("solve --seed 7 --eliminate 1,1 " + f);
  CHECK(re.exit_code == 0);
  json je = json::parse(re.out);
  CHECK(je["eliminating"].size() == 5); // deg-4 eliminating polynomial of X1+X2
}

TEST_CASE("toric subcommand") {
  auto f = write_fixture("cli_tor.sys", "field 23\nvars x\neq x^2 - x\n");
  json t = json::parse(run_cli("solve --mode toric " + f).out);
  CHECK(t["degree"] == 1);
  json a = json::parse(run_cli("solve " + f).out);
  CHECK(a["degree"] == 2);
}

TEST_CASE("oracle subcommand") {
  auto f = write_fixture("cli_diag.sys", DIAG);
  json j = json::parse(run_cli("oracle " + f).out);
  CHECK(j["count"] == 4);
  CHECK(j["points"][3] == json::array({"18", "16"}));
  // X^2 + 1 over F_7 splits only in the quadratic extension
  auto g = write_fixture("cli_i.sys", "field 7\nvars x\neq x^2 + 1\n");
  CHECK(json::parse(run_cli("oracle " + g).out)["count"] == 0);
  CHECK(json::parse(run_cli("oracle --ext 2 " + g).out)["count"] == 2);
}

TEST_CASE("exit codes") {
  auto bad = write_fixture("cli_bad.sys", "field 24\nvars x\neq x - 1\n");
  CHECK(run_cli("solve " + bad).exit_code == 2);
  auto small = write_fixture("cli_small.sys", "field 5\nvars x\neq x^2 - 2\n");
  CHECK(run_cli("solve " + small).exit_code == 4);
  auto zero = write_fixture("cli_zero.sys", "field 23\nvars x\neq x - x\n");
  CHECK(run_cli("solve " + zero).exit_code == 3);
  auto under = write_fixture("cli_under.sys", "field 23\nvars x y\neq x - 1\n");
  CHECK(run_cli("solve " + under).exit_code == 3);
}
