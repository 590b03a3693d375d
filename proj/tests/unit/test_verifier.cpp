#include <cmath>

#include "doctest.h"
#include "gifode/assembler.hpp"
#include "gifode/determining.hpp"
#include "gifode/errors.hpp"
#include "gifode/expr_parser.hpp"
#include "gifode/ode.hpp"
#include "gifode/verifier.hpp"

using namespace gifode;

namespace {

RatY raty(const std::string& s) {
  auto r = tree_to_raty(parse_expression(s));
  REQUIRE(r);
  return *r;
}

Tree expr(const std::string& s) { return parse_expression(s); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("exact factor checks") {
  CHECK(check_mu_exact(MuKind::YY, parse_ode("y^2"), raty("-2/y")));
  CHECK_FALSE(check_mu_exact(MuKind::YY, parse_ode("y^2"), raty("-1/y")));
  CHECK(check_mu_exact(MuKind::YX, parse_ode("x*y"), RatY()));
  CHECK(check_mu_exact(MuKind::YX, parse_ode("x^2*(y^2 + 1)"), RatY()));
}

TEST_CASE("numeric PDE check") {
  VerificationReport r = check_zeta_numeric(expr("-x - 1/y"), parse_ode("y^2"), 100, 1e-9, 1);
  CHECK(r.passed);
  CHECK(r.sample_count == 100);
  CHECK(r.max_pde_residual <= 1e-12);

  VerificationReport flat = check_zeta_numeric(expr("x"), parse_ode("y^2"), 50, 1e-9, 1);
  CHECK_FALSE(flat.passed);
  CHECK_FALSE(flat.failures.empty());

  VerificationReport wrong = check_zeta_numeric(expr("x - 1/y"), parse_ode("y^2"), 50, 1e-9, 1);
  CHECK_FALSE(wrong.passed);
  CHECK(wrong.max_pde_residual > 0.5);

  SampleBox unit{0, 1, 0, 1};
  VerificationReport logi =
      check_zeta_numeric(expr("ln(y) - ln(1 - y) - x"), parse_ode("y - y^2"), 100, 1e-9, 3, unit);
  CHECK(logi.passed);

  // Every sample lands on the pole line y = 0 of f.
  CHECK(code_of([] { check_zeta_numeric(expr("x + y^2"), parse_ode("1/y"), 10, 1e-9, 1, SampleBox{0, 1, 0, 0}); }) ==
        ErrorCode::NoValidSamples);
}

TEST_CASE("numeric checks are reproducible") {
  Tree z = expr("ln(y) - ln(1 - y) - x");
  ODE o = parse_ode("y - y^2");
  SampleBox unit{0, 1, 0, 1};
  auto a = check_zeta_numeric(z, o, 40, 1e-9, 11, unit), b = check_zeta_numeric(z, o, 40, 1e-9, 11, unit);
  CHECK(a.max_pde_residual == b.max_pde_residual);
}

TEST_CASE("trajectory checks") {
  VerificationReport a = check_trajectory(expr("ln(y) - ln(1 - y) - x"), parse_ode("y - y^2"), 0, 0.5, 1e-3, 1, 1e-6);
  CHECK(a.passed);
  CHECK(a.steps == 1000);
  VerificationReport b = check_trajectory(expr("-x - 1/y"), parse_ode("y^2"), 0, 1, 5e-4, 0.5, 1e-6);
  CHECK(b.passed);
  VerificationReport c = check_trajectory(expr("y*exp(-x)"), parse_ode("y"), 0, 1, 1e-3, 1, 1e-6);
  CHECK(c.passed);
  VerificationReport bad = check_trajectory(expr("y"), parse_ode("y"), 0, 1, 1e-3, 1, 1e-6);
  CHECK_FALSE(bad.passed);
  CHECK(bad.trajectory_drift == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-6));
  // y = 1/(1 - x) blows up at x = 1.
  CHECK(code_of([] { check_trajectory(expr("-x - 1/y"), parse_ode("y^2"), 0, 1, 1e-3, 1.5, 1e-6); }) ==
        ErrorCode::PoleOnTrajectory);
}

TEST_CASE("RK4 drift shrinks at fourth order") {
  VerificationReport coarse = check_trajectory(expr("-x - 1/y"), parse_ode("y^2"), 0, 1, 0.05, 0.5, 1);
  VerificationReport fine = check_trajectory(expr("-x - 1/y"), parse_ode("y^2"), 0, 1, 0.025, 0.5, 1);
  CHECK(coarse.trajectory_drift / fine.trajectory_drift >= 8);
  CHECK(coarse.trajectory_drift / fine.trajectory_drift <= 40);
}

TEST_CASE("corpus templates") {
  ZetaTemplate inv{raty("x + 1/y"), {}};
  auto a = corpus_case_from(inv);
  REQUIRE(a);
  CHECK(a->ode == parse_ode("y^2"));
  CHECK(a->mu_ref == raty("-2/y"));

  ZetaTemplate lin{raty("-x"), {{1, raty("y")}}};
  auto b = corpus_case_from(lin);
  REQUIRE(b);
  CHECK(b->ode == parse_ode("y"));
  CHECK(b->mu_ref == raty("-1/y"));
  // The solver's factor for this ODE is 0; both pass.
  CHECK(check_mu_exact(MuKind::YY, b->ode, RatY()));

  ZetaTemplate logi{raty("-x"), {{1, raty("y")}, {-1, raty("1 - y")}}};
  auto c = corpus_case_from(logi);
  REQUIRE(c);
  CHECK(c->ode == parse_ode("y - y^2"));
  CHECK(c->mu_ref == raty("(1 - 2*y)/(y^2 - y)"));

  CHECK_FALSE(corpus_case_from(ZetaTemplate{raty("x"), {}}));
}

TEST_CASE("generated corpus") {
  std::vector<CorpusCase> cs = gen_corpus(0, 20);
  REQUIRE(cs.size() == 20);
  std::vector<CorpusCase> again = gen_corpus(0, 20);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK(check_mu_exact(MuKind::YY, cs[i].ode, cs[i].mu_ref));
    CHECK(cs[i].ode == again[i].ode);
    CHECK(to_string(cs[i].zeta_ref) == to_string(again[i].zeta_ref));
  }
  CHECK_FALSE(gen_corpus(1, 3)[0].ode == cs[0].ode);
}

TEST_CASE("assembled corpus integrals pass the numeric gates") {
  int passed = 0;
  for (const CorpusCase& c : gen_corpus(4, 8)) {
    try {
      Assembly a = assemble(c.ode, c.mu_ref);
      VerificationReport r = check_zeta_numeric(a.zeta, c.ode, 30, 1e-7, 2);
      CHECK_MESSAGE(r.max_pde_residual <= 1e-7, to_string(c.ode));
      ++passed;
    } catch (const Error& e) {
      // Pole-ridden boxes are skipped, but assembly itself must not be inconsistent.
      CHECK(e.code() != ErrorCode::AssemblyInconsistent);
    }
  }
  CHECK(passed >= 5);
}
