#include "doctest.h"
#include "gifode/errors.hpp"
#include "gifode/jets.hpp"
#include "gifode/polyx.hpp"
#include "gifode/polyy.hpp"
#include "gifode/rational.hpp"
#include "test_support.hpp"

using namespace gifode;
using support::Rng;

namespace {

PolyX px(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return PolyX(std::move(v));
}

PolyYX pyx(std::initializer_list<RatX> cs) { return PolyYX(std::vector<RatX>(cs)); }

}  // namespace

TEST_CASE("rationals stay canonical") {
  Rat r = make_rat(6, -4);
  CHECK(r.get_num() == -3);
  CHECK(r.get_den() == 2);
  CHECK(to_string(make_rat(0, 7)) == "0");
  CHECK(parse_rat("-10/4") == make_rat(-5, 2));
  CHECK(rational_roots({Rat(-2), Rat(1), Rat(1)}) == std::vector<Rat>{Rat(-2), Rat(1)});
  CHECK(rational_roots({Rat(1), Rat(0), Rat(1)}).empty());
  CHECK(rational_roots({Rat(0), Rat(-1), Rat(0), Rat(4)}) == std::vector<Rat>{Rat(-1, 2), Rat(0), Rat(1, 2)});
  Rat root;
  CHECK(rational_sqrt(make_rat(9, 4), &root));
  CHECK(root == make_rat(3, 2));
  CHECK_FALSE(rational_sqrt(Rat(2), &root));
}

TEST_CASE("ratx_normalize examples") {
  CHECK(ratx_normalize(px({-1, 0, 1}), px({-1, 1})) == RatX(px({1, 1})));
  CHECK(ratx_normalize(PolyX(), px({5})).is_zero());
  CHECK(ratx_normalize(px({0, 2}), px({4})) == RatX(PolyX::monomial(make_rat(1, 2), 1)));
  CHECK_THROWS_AS(ratx_normalize(px({1}), PolyX()), Error);
  RatX r = ratx_normalize(px({3, 3}), px({2, 2, 0}));
  CHECK(r.den().lc() == 1);
}

TEST_CASE("polynomial gcd and rational-root factoring") {
  PolyX a = px({-1, 0, 1}) * px({2, 1});
  PolyX b = px({-1, 1}) * px({5, 0, 1});
  CHECK(gcd(a, b) == px({-1, 1}));
  XFactorization f = factor_rational_roots(px({-2, 1}) * px({-2, 1}) * px({1, 0, 1}).scaled(Rat(3)));
  REQUIRE(f.roots.size() == 1);
  CHECK(f.roots[0].first == 2);
  CHECK(f.roots[0].second == 2);
  CHECK(f.rest == px({1, 0, 1}));
  CHECK(f.unit == 3);
}

TEST_CASE("ring axioms hold on random elements") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    RatX a = support::random_ratx(rng, 2), b = support::random_ratx(rng, 2), c = support::random_ratx(rng, 2);
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    PolyYX p = support::random_polyyx(rng, 3, 2), q = support::random_polyyx(rng, 3, 2);
    PolyYX s = support::random_polyyx(rng, 2, 1);
    CHECK(p * q == q * p);
    CHECK(p * (q + s) == p * q + p * s);
    CHECK((p * q).degree() == p.degree() + q.degree());
    CHECK((p + q).degree() <= std::max(p.degree(), q.degree()));
  }
}

TEST_CASE("polyy arithmetic examples") {
  PolyYX y = PolyYX::y();
  PolyYX one(RatX(1));
  CHECK((y + one) * (y - one) == y * y - one);
  CHECK(((y + one) * PolyYX()).is_zero());
  PolyYX p = y.pow(3) + PolyYX(RatX::x()) * y;
  CHECK(p.dy() == PolyYX(RatX(3)) * y * y + PolyYX(RatX::x()));
  for (int d = 1; d < 5; ++d) CHECK(y.pow(d).dy().degree() == d - 1);
  auto [q, r] = divmod(y.pow(3) - one, y - one);
  CHECK(q == y * y + y + one);
  CHECK(r.is_zero());
  CHECK(gcd(y * y - one, y * y + PolyYX(RatX(2)) * y + one) == y + one);
}

TEST_CASE("raty_normalize examples and invariants") {
  PolyYX y = PolyYX::y();
  CHECK(raty_normalize(PolyYX(RatX(2)) * y * y, PolyYX(RatX(2)) * y) == RatY(y));
  CHECK(raty_normalize(y * y - PolyYX(RatX(1)), y - PolyYX(RatX(1))) == RatY(y + PolyYX(RatX(1))));
  RatY m = raty_normalize(PolyYX(RatX(-2)), y);
  CHECK(to_string(m) == "-2/y");
  CHECK_THROWS_AS(raty_normalize(y, PolyYX()), Error);

  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    PolyYX n = support::random_polyyx(rng, 2, 2), d = support::random_polyyx(rng, 2, 2);
    RatX k = support::random_ratx(rng, 2);
    if (k.is_zero()) continue;
    RatY a = raty_normalize(n, d);
    CHECK(raty_normalize(n.scaled(k), d.scaled(k)) == a);
    CHECK(raty_normalize(a.num(), a.den()) == a);
    CHECK(a.den().lc() == RatX(1));
  }
}

TEST_CASE("raty calculus") {
  RatY y = RatY::y();
  RatY x(RatX::x());
  CHECK((y * y).dy() == RatY(2) * y);
  CHECK((x * y).dx() == y);
  CHECK((RatY(1) / y).dy() == RatY(-1) / (y * y));
  RatY f = (x * y + RatY(1)) / (y - x);
  CHECK(std::abs(f.eval(0.5, 2.0) - (2.0) / 1.5) < 1e-14);
  CHECK(f.at_y(RatX(0)) == RatX(-1) / RatX::x());
}

TEST_CASE("to_string prints cleared x-coefficients") {
  RatY y = RatY::y();
  RatY x(RatX::x());
  CHECK(to_string((RatY(1) - RatY(2) * y) / (y * y - y)) == "(-2*y + 1)/(y^2 - y)");
  CHECK(to_string(y / x) == "y/x");
  CHECK(to_string((y + RatY(1)) / (x + RatY(1))) == "(y + 1)/(x + 1)");
}

TEST_CASE("diffpoly_dx examples") {
  JetVar a = JetVar::function(Side::X, 0);
  JetVar a1 = JetVar::function(Side::X, 0, 1);
  DiffPoly p = DiffPoly::term({{a, 1}}, RatX::x());
  DiffPoly expect = DiffPoly::variable(a) + DiffPoly::term({{a1, 1}}, RatX::x());
  CHECK(diffpoly_dx(p) == expect);
  CHECK(diffpoly_dx(DiffPoly(RatX(3))).is_zero());
  JetVar b = JetVar::function(Side::Y, 1), b1 = JetVar::function(Side::Y, 1, 1);
  CHECK(diffpoly_dx(DiffPoly::variable(b, 2)) == DiffPoly::term({{b, 1}, {b1, 1}}, RatX(2)));
  CHECK(diffpoly_dx(DiffPoly::variable(JetVar::coefficient(Side::X, 0))).is_zero());
  CHECK_THROWS_AS(diffpoly_dx(DiffPoly::variable(JetVar::function(Side::X, 0, 3)), 3), Error);
}

TEST_CASE("diffpoly_dx is a derivation") {
  Rng rng(3);
  auto random_dp = [&] {
    DiffPoly p;
    for (int t = 0; t < 3; ++t) {
      DiffPoly m(support::random_ratx(rng, 1));
      for (int k = 0; k < rng.integer(0, 2); ++k)
        m = m * DiffPoly::variable(JetVar::function(rng.chance(50) ? Side::X : Side::Y, static_cast<int>(rng.integer(0, 1)),
                                                    static_cast<int>(rng.integer(0, 1))));
      p += m;
    }
    return p;
  };
  for (int i = 0; i < 30; ++i) {
    DiffPoly p = random_dp(), q = random_dp();
    CHECK(diffpoly_dx(p * q) == diffpoly_dx(p) * q + p * diffpoly_dx(q));
  }
}

TEST_CASE("jet names round-trip") {
  std::vector<std::string> params{"p", "q"};
  std::vector<JetVar> vs{JetVar::function(Side::X, 0), JetVar::function(Side::Y, 3, 2), JetVar::coefficient(Side::X, 1),
                         JetVar::coefficient(Side::Y, 0), JetVar::coefficient(Side::Y, 2, 1), JetVar::param(1)};
  for (const auto& v : vs) {
    auto back = parse_jet_name(jet_name(v, params, true), params);
    REQUIRE(back);
    CHECK(*back == v);
  }
  CHECK(jet_name(JetVar::function(Side::Y, 3, 2)) == "a2_3''");
  CHECK(jet_name(JetVar::coefficient(Side::X, 0)) == "c_0");
  CHECK(jet_name(JetVar::coefficient(Side::Y, 1)) == "d_1");
}

TEST_CASE("sparse polynomial helpers") {
  JetVar u = JetVar::coefficient(Side::X, 0), v = JetVar::coefficient(Side::X, 1);
  AlgPoly U = AlgPoly::variable(u), V = AlgPoly::variable(v);
  AlgPoly p = (U + V) * (U - V);
  auto q = exact_divide(p, U + V);
  REQUIRE(q);
  CHECK(*q == U - V);
  CHECK_FALSE(exact_divide(p + AlgPoly(Rat(1)), U + V));
  CHECK(p.substitute(v, U) == AlgPoly());
  CHECK(make_primitive(U.scaled(Rat(-4)) + AlgPoly(Rat(6))) == U.scaled(Rat(2)) - AlgPoly(Rat(3)));
  CHECK(to_string(U * U - V.scaled(Rat(3)), default_namer()) == "c_0^2 - 3*c_1");
}
