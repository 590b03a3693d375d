#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = gifode::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("solve y^2 end to end") {
  Outcome r = run({"solve", "dy/dx = y^2", "--mu", "yy", "--max-nx", "1", "--mode", "const", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["mu_yy"] == "-2/y");
  CHECK(j["zeta"] == "-x - 1/y");
  CHECK(j["kind"] == "yy");
  for (const char* key : {"input", "kind", "ansatz", "system", "solution", "mu", "zeta", "verification", "timings"})
    CHECK_MESSAGE(j.contains(key), key);
  for (const char* key : {"nx", "ny", "mode"}) CHECK(j["ansatz"].contains(key));
  for (const char* key : {"n_sys", "n_unknowns", "max_cons"}) CHECK(j["system"].contains(key));
  CHECK(j["solution"].contains("branches"));
  for (const char* key : {"exact", "max_pde_residual", "trajectory_drift"}) CHECK(j["verification"].contains(key));
  CHECK(j["verification"]["exact"] == true);
  CHECK(j["verification"]["max_pde_residual"].get<double>() <= 1e-9);
}

TEST_CASE("repeated runs agree apart from timings") {
  std::vector<std::string> args{"solve", "dy/dx = y - y^2", "--max-nx", "2", "--anchor-y", "1/2", "--json", "--seed", "4"};
  json a = json::parse(run(args).out), b = json::parse(run(args).out);
  a.erase("timings");
  b.erase("timings");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("guide rows") {
  Outcome r = run({"guide", "--mu", "yy", "--np", "0", "--nq", "1", "--json"});
  REQUIRE(r.code == 0);
  json row = json::parse(r.out).at(0);
  CHECK(row["ny_minus_nx"] == 3);
  CHECK(row["at_most"] == false);
  CHECK(row["max_cons"] == 3);
  CHECK(row["pairs"].at(0) == json::array({0, 3}));

  Outcome gap = run({"guide", "--mu", "xx", "--np", "2", "--nq", "2"});
  CHECK(gap.code == 0);
  CHECK(gap.err.find("N_P = N_Q") != std::string::npos);
  CHECK(gap.out.find("fallback") != std::string::npos);
}

TEST_CASE("system export") {
  Outcome r = run({"system", "dy/dx = 1/(x*y+1)", "--mu", "yy", "--nx", "0", "--ny", "3", "--mode", "func", "--export"});
  REQUIRE(r.code == 0);
  auto eqs = lines_of(r.out);
  CHECK(eqs.size() == 7);
  CHECK(r.out.find('\'') != std::string::npos);

  Outcome j = run({"system", "dy/dx = y^2", "--nx", "0", "--ny", "1", "--json"});
  REQUIRE(j.code == 0);
  json s = json::parse(j.out);
  CHECK(s["system"]["n_sys"] == 3);
  CHECK(s["equations"].size() == 3);
}

TEST_CASE("parametric solve reports constraints") {
  Outcome r = run({"solve", "dy/dx = y^2 + p", "--param", "p", "--mu", "yy", "--max-nx", "0", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  bool seen = false;
  for (const auto& b : j["solution"]["branches"])
    seen |= b.get<std::string>().find("d_0^2 + p = 0") != std::string::npos;
  CHECK(seen);
}

TEST_CASE("exit codes") {
  CHECK(run({"solve", "dy/dx = x + y^3", "--mu", "yy", "--max-nx", "0"}).code == 2);
  CHECK(run({"solve", "dy/dx = y^"}).code == 3);
  CHECK(run({"solve", "dy/dx = y^2", "--mu", "zz"}).code == 3);
  CHECK(run({"bogus"}).code == 3);
  CHECK(run({}).code == 3);
  CHECK(run({"solve", "dy/dx = y^2", "--mu", "yy", "--max-unknowns", "1"}).code == 4);

  Outcome bad = run({"verify", "dy/dx = y^2", "--zeta", "x - 1/y"});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"verify", "dy/dx = y^2", "--zeta", "-x - 1/y", "--mu-yy", "-2/y"}).code == 0);
  CHECK(run({"verify", "dy/dx = y^2", "--mu-yy", "-1/y"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("corpus lines") {
  Outcome r = run({"corpus", "--seed", "0", "-n", "3"});
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 3);
  for (const auto& l : ls) {
    json j = json::parse(l);
    CHECK(j.contains("f"));
    CHECK(j.contains("zeta"));
    CHECK(j.contains("mu_yy"));
    CHECK(run({"verify", "dy/dx = " + j["f"].get<std::string>(), "--mu-yy", j["mu_yy"].get<std::string>()}).code == 0);
  }
  CHECK(run({"corpus", "--seed", "0", "-n", "3"}).out == r.out);
}
