#include <algorithm>

#include "doctest.h"
#include "gifode/determining.hpp"
#include "gifode/errors.hpp"
#include "gifode/expr_parser.hpp"
#include "gifode/ode.hpp"
#include "gifode/solver.hpp"
#include "test_support.hpp"

using namespace gifode;

namespace {

const JetVar c0 = JetVar::coefficient(Side::X, 0);
const JetVar c1 = JetVar::coefficient(Side::X, 1);
const JetVar d0 = JetVar::coefficient(Side::Y, 0);

AlgPoly var(const JetVar& v) { return AlgPoly::variable(v); }
AlgPoly num(long c) { return AlgPoly(Rat(c)); }

// Branches joined with " | ".
std::string describe(const SolutionSet& s, const std::vector<std::string>& params = {}) {
  std::string out;
  for (const auto& b : s.branches) out += (out.empty() ? "" : " | ") + to_string(b, default_namer(params));
  return out;
}

AlgebraicSystem system_for(const std::string& f, int nx, int ny, const std::vector<std::string>& params = {}) {
  ODE o = parse_ode(f, params);
  return reduce_to_algebraic(build_system(MuKind::YY, o, build_ansatz(MuKind::YY, nx, ny, AnsatzMode::constant())));
}

}  // namespace

TEST_CASE("reduction to algebraic equations") {
  AlgebraicSystem a = system_for("y^2", 0, 1);
  CHECK(a.equations.size() == 3);
  CHECK(a.unknowns == std::vector<JetVar>{c0, d0});

  // x*u + (u + v) splits into its x-coefficients.
  DeterminingSystem sys;
  sys.ansatz = build_ansatz(MuKind::YY, 1, 0, AnsatzMode::constant());
  sys.equations = {DiffPoly::variable(c0).scaled(RatX::x()) + DiffPoly::variable(c0) + DiffPoly::variable(c1)};
  AlgebraicSystem r = reduce_to_algebraic(sys);
  CHECK(r.equations.size() == 2);
  CHECK(std::find(r.equations.begin(), r.equations.end(), var(c0)) != r.equations.end());
  CHECK(std::find(r.equations.begin(), r.equations.end(), var(c0) + var(c1)) != r.equations.end());

  DeterminingSystem fsys = build_system(MuKind::YY, parse_ode("y^2"), build_ansatz(MuKind::YY, 0, 1, AnsatzMode::func()));
  try {
    reduce_to_algebraic(fsys);
    FAIL("expected UnsupportedMode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedMode);
  }
}

TEST_CASE("solve examples") {
  AlgebraicSystem a;
  a.unknowns = {c0, d0};
  a.equations = {num(-2) - var(c0), num(-4) * var(d0) - num(2) * var(c0) * var(d0), num(-2) * var(d0) * var(d0)};
  SolutionSet s = solve_algebraic(a);
  CHECK(describe(s) == "c_0 = -2, d_0 = 0");
  CHECK(branch_is_sound(a, s.branches[0]));

  AlgebraicSystem none;
  none.unknowns = {c0};
  none.equations = {var(c0) * var(c0) + num(1)};
  CHECK(solve_algebraic(none).branches.empty());

  AlgebraicSystem uv;
  uv.unknowns = {c0, c1};
  uv.equations = {var(c0) * var(c1)};
  SolutionSet split = solve_algebraic(uv);
  CHECK(describe(split) == "c_0 = 0, c_1 free | c_1 = 0, c_0 != 0, c_0 free");
  for (const auto& b : split.branches) CHECK(branch_is_sound(uv, b));

  AlgebraicSystem contradiction;
  contradiction.unknowns = {c0};
  contradiction.equations = {var(c0) - num(1), var(c0) - num(2)};
  CHECK(solve_algebraic(contradiction).branches.empty());
}

TEST_CASE("rational roots branch, irrational ones do not") {
  AlgebraicSystem a;
  a.unknowns = {c0};
  a.equations = {var(c0) * var(c0) - num(4)};
  CHECK(describe(solve_algebraic(a)) == "c_0 = -2 | c_0 = 2");
  a.equations = {var(c0) * var(c0) - num(2)};
  CHECK(solve_algebraic(a).branches.empty());
}

TEST_CASE("parameter constraints for f = y^2 + p") {
  AlgebraicSystem a = system_for("y^2 + p", 0, 1, {"p"});
  SolutionSet s = derive_constraints(a);
  REQUIRE_FALSE(s.branches.empty());
  const Branch& b = s.branches.front();
  CHECK(to_string(b, default_namer({"p"})) == "c_0 = -2, d_0^2 + p = 0");
  CHECK(branch_is_sound(a, b));

  ODE o = parse_ode("y^2 + p", {"p"});
  ODE inst = instantiate(o, {{"p", Rat(-1)}});
  AlgebraicSystem ai = system_for("y^2 - 1", 0, 1);
  SolutionSet si = solve_algebraic(ai);
  Ansatz ans = build_ansatz(MuKind::YY, 0, 1, AnsatzMode::constant());
  std::vector<RatY> mus;
  for (const auto& br : si.branches) {
    auto vals = instantiate_branch(ai, br);
    if (!vals) continue;
    RatY mu = instantiate_mu(inst, ans, *vals);
    CHECK(mu_residual(MuKind::YY, inst, mu).is_zero());
    mus.push_back(mu);
  }
  REQUIRE(mus.size() == 2);
  CHECK(mus[0] != mus[1]);
}

TEST_CASE("limits give up") {
  AlgebraicSystem a = system_for("y^2", 0, 1);
  SolveLimits tight;
  tight.max_unknowns = 1;
  SolutionSet s = solve_algebraic(a, tight);
  CHECK(s.gave_up);
  CHECK_FALSE(s.gave_up_reason.empty());

  AlgebraicSystem deep;
  for (int i = 0; i < 4; ++i) deep.unknowns.push_back(JetVar::coefficient(Side::X, i));
  AlgPoly prod = num(1);
  for (const auto& v : deep.unknowns) prod = prod * var(v);
  deep.equations = {prod * (var(deep.unknowns[0]) + num(1))};
  SolveLimits shallow;
  shallow.max_split_depth = 1;
  CHECK(solve_algebraic(deep, shallow).gave_up);
  CHECK_FALSE(solve_algebraic(deep).gave_up);
}

TEST_CASE("random systems: every branch is sound") {
  support::Rng rng(9);
  int branches = 0;
  for (int i = 0; i < 200; ++i) {
    AlgebraicSystem a = support::random_algebraic_system(rng);
    SolutionSet s = solve_algebraic(a);
    for (const auto& b : s.branches) {
      CHECK_MESSAGE(branch_is_sound(a, b), to_string(b, default_namer()));
      ++branches;
    }
  }
  CHECK(branches > 100);
}

TEST_CASE("deterministic") {
  support::Rng r1(77), r2(77);
  for (int i = 0; i < 30; ++i) {
    AlgebraicSystem a = support::random_algebraic_system(r1), b = support::random_algebraic_system(r2);
    CHECK(describe(solve_algebraic(a)) == describe(solve_algebraic(b)));
  }
}

TEST_CASE("search examples") {
  auto mu_of = [](const std::string& f, int max_nx) {
    ODE o = parse_ode(f);
    SearchResult r = search(o, {MuKind::YY}, max_nx, AnsatzMode::constant());
    REQUIRE(r.found);
    CHECK(mu_residual(MuKind::YY, o, r.mu_yy).is_zero());
    return r.mu_yy;
  };
  CHECK(to_string(mu_of("y^2", 1)) == "-2/y");
  CHECK(mu_of("y", 0).is_zero());
  mu_of("y - y^2", 2);

  SearchResult miss = search(parse_ode("x + y^3"), {MuKind::YY}, 0, AnsatzMode::constant());
  CHECK_FALSE(miss.found);
  CHECK_FALSE(miss.candidates.empty());
  CHECK_THROWS_AS(search(parse_ode("p*y", {"p"}), {MuKind::YY}, 0, AnsatzMode::constant()), Error);
  CHECK_THROWS_AS(search(parse_ode("y"), {MuKind::YY}, 0, AnsatzMode::func()), Error);
}

TEST_CASE("search reaches other kinds") {
  ODE o = parse_ode("1/(x*y + 1)");
  SearchResult r = search(o, {MuKind::YY, MuKind::YYQ, MuKind::YX, MuKind::XY, MuKind::XX}, 1, AnsatzMode::constant());
  REQUIRE(r.found);
  CHECK(residual_is_zero(r.kind, o, r.mu));
  CHECK(mu_residual(MuKind::YY, o, r.mu_yy).is_zero());
}
