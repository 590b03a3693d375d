#pragma once

// Shared generators and independent oracles for the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "gifode/determining.hpp"
#include "gifode/errors.hpp"
#include "gifode/formula.hpp"
#include "gifode/jets.hpp"
#include "gifode/ode.hpp"
#include "gifode/order_guide.hpp"
#include "gifode/polyy.hpp"
#include "gifode/solver.hpp"

namespace support {

using namespace gifode;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : e_(seed) {}
  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) { return lo + static_cast<long>(e_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double real(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(e_() >> 11) * 0x1.0p-53); }
  bool chance(int percent) { return integer(0, 99) < percent; }
  Rat rat(long range = 3) {
    long d = integer(1, 3);
    return make_rat(integer(-range, range), d);
  }

 private:
  std::mt19937_64 e_;
};

inline PolyX random_polyx(Rng& r, int max_deg, bool nonzero = true) {
  for (;;) {
    std::vector<Rat> cs;
    int d = static_cast<int>(r.integer(0, max_deg));
    for (int i = 0; i <= d; ++i) cs.push_back(r.rat());
    PolyX p(std::move(cs));
    if (!nonzero || !p.is_zero()) return p;
  }
}

inline RatX random_ratx(Rng& r, int max_deg, bool allow_den = true) {
  PolyX n = random_polyx(r, max_deg, false);
  if (!allow_den || r.chance(60)) return RatX(n);
  return RatX(n, random_polyx(r, max_deg));
}

inline PolyYX random_polyyx(Rng& r, int max_deg_y, int max_deg_x, bool allow_den = true) {
  for (;;) {
    std::vector<RatX> cs;
    int d = static_cast<int>(r.integer(0, max_deg_y));
    for (int i = 0; i <= d; ++i) cs.push_back(r.chance(25) ? RatX() : random_ratx(r, max_deg_x, allow_den));
    PolyYX p(std::move(cs));
    if (!p.is_zero()) return p;
  }
}

// Coefficient (a polynomial in y over Q(x)) of one jet monomial.
inline PolyYX jet_coefficient(const PolyYD& p, const DiffPoly::Monomial& m) {
  std::vector<RatX> cs;
  for (const auto& c : p.coeffs()) {
    auto it = c.terms().find(m);
    cs.push_back(it == c.terms().end() ? RatX() : it->second);
  }
  return PolyYX(std::move(cs));
}

inline std::set<DiffPoly::Monomial> jet_monomials(const PolyYD& p) {
  std::set<DiffPoly::Monomial> out;
  for (const auto& c : p.coeffs())
    for (const auto& [m, k] : c.terms()) out.insert(m);
  return out;
}

// a = r * b for one rational function r of y over Q(x) with r != 0.
inline bool proportional(const PolyYD& a, const PolyYD& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  auto ma = jet_monomials(a), mb = jet_monomials(b);
  if (ma != mb) return false;
  const auto& m0 = *ma.begin();
  RatY r = raty_normalize(jet_coefficient(a, m0), jet_coefficient(b, m0));
  for (const auto& m : ma) {
    if (jet_coefficient(a, m) * r.den() != jet_coefficient(b, m) * r.num()) return false;
  }
  return true;
}

// Y^2 S + Q^3 (X Y_x - X_x Y) + P Q^2 (X Y_y - X_y Y) + Q X Y (P Q_y - P_y Q),
// S = P Q Q_yy - 2 P Q_y^2 - P_yy Q^2 + 2 P_y Q Q_y.
inline PolyYD source_term(const PolyYD& P, const PolyYD& Q) {
  PolyYD Py = P.dy(), Qy = Q.dy();
  return P * Q * Qy.dy() - PolyYD(DiffPoly(RatX(2))) * P * Qy * Qy - P.dy().dy() * Q * Q +
         PolyYD(DiffPoly(RatX(2))) * Py * Q * Qy;
}

inline PolyYD yy_expansion(const PolyYD& P, const PolyYD& Q, const PolyYD& X, const PolyYD& Y) {
  return Y * Y * source_term(P, Q) + Q * Q * Q * (X * Y.dx() - X.dx() * Y) + P * Q * Q * (X * Y.dy() - X.dy() * Y) +
         Q * X * Y * (P * Q.dy() - P.dy() * Q);
}

// YYQ form with mu = X/(Q Y).
inline PolyYD yyq_expansion(const PolyYD& P, const PolyYD& Q, const PolyYD& X, const PolyYD& Y) {
  PolyYD two(DiffPoly(RatX(2)));
  return Y * Y * source_term(P, Q) + Q * Q * (X * Y.dx() - X.dx() * Y) + P * Q * (X * Y.dy() - X.dy() * Y) +
         X * Y * (two * P * Q.dy() + Q * Q.dx() - P.dy() * Q);
}

// yyq_expansion with the Y factors dropped from two terms and the sign of
// X_x flipped; not a cofactor of the residual.
inline PolyYD yyq_expansion_without_y_factors(const PolyYD& P, const PolyYD& Q, const PolyYD& X, const PolyYD& Y) {
  PolyYD two(DiffPoly(RatX(2)));
  return Y * Y * source_term(P, Q) - Q * Q * (X * Y.dx() + X.dx()) + P * Q * (X * Y.dy() - X.dy()) +
         X * (two * P * Q.dy() + Q * Q.dx() - P.dy() * Q);
}

// Random expression of bounded depth in x and y; ln and negative powers only
// of expressions that are safely positive.
inline Tree random_tree(Rng& r, int depth) {
  if (depth <= 1 || r.chance(20)) {
    switch (r.integer(0, 2)) {
      case 0: return tree_x();
      case 1: return tree_y();
      default: return tree_const(r.rat());
    }
  }
  Tree a = random_tree(r, depth - 1);
  switch (r.integer(0, 5)) {
    case 0: return a + random_tree(r, depth - 1);
    case 1: return a * random_tree(r, depth - 1);
    case 2: return tree_pow(a, static_cast<int>(r.integer(2, 3)));
    case 3: return tree_ln(tree_const(2L) + a * a);
    case 4: return tree_exp(a / (tree_const(1L) + a * a));
    default: return tree_pow(tree_const(1L) + a * a, -1);
  }
}

// Small random algebraic system in unknowns u0..u{n-1}: each equation is a
// sparse polynomial of total degree <= 3 with small integer coefficients.
inline AlgebraicSystem random_algebraic_system(Rng& r) {
  AlgebraicSystem s;
  int n = static_cast<int>(r.integer(1, 4));
  for (int i = 0; i < n; ++i) s.unknowns.push_back(JetVar::coefficient(Side::X, i));
  int neq = static_cast<int>(r.integer(1, 4));
  for (int e = 0; e < neq; ++e) {
    AlgPoly p;
    int nterms = static_cast<int>(r.integer(1, 4));
    for (int t = 0; t < nterms; ++t) {
      AlgPoly m(Rat(r.integer(-3, 3)));
      int deg = static_cast<int>(r.integer(0, 3));
      for (int k = 0; k < deg; ++k) m = m * AlgPoly::variable(s.unknowns[static_cast<std::size_t>(r.integer(0, n - 1))]);
      p += m;
    }
    if (!p.is_zero()) s.equations.push_back(p);
  }
  return s;
}

// Order tables transcribed as coefficient rows over (N_P, N_Q, 1):
// relation bound, n_sys base (without N_X + N_Y) and max constraint count.
struct TableEntry {
  bool at_most;
  int bound, n_sys_base, max_cons;
};

inline std::optional<TableEntry> table_oracle(MuKind kind, int np, int nq) {
  struct Lin {
    int a, b, c;
    int at(int p, int q) const { return a * p + b * q + c; }
  };
  struct Col {
    bool at_most;
    Lin bound, nsys, cons;
  };
  // Columns: N_P-N_Q > 1, N_P-N_Q < 1 (< 0 for XX), N_P-N_Q = 1.
  static const std::map<MuKind, std::array<Col, 3>> tables = {
      {MuKind::YY, {{{false, {0, 0, 1}, {1, 2, 0}, {1, 2, -1}},
                     {false, {-1, 1, 2}, {0, 3, 1}, {0, 3, 0}},
                     {true, {0, 0, 1}, {1, 2, 0}, {3, 0, -3}}}}},
      {MuKind::YX, {{{false, {1, -1, 0}, {3, 1, 0}, {3, 1, -1}},
                     {false, {0, 0, 1}, {2, 2, 1}, {2, 2, 0}},
                     {true, {0, 0, 1}, {2, 2, 1}, {4, 0, -2}}}}},
      {MuKind::XY, {{{false, {0, 0, 0}, {2, 2, 0}, {2, 2, -1}},
                     {false, {-1, 1, 1}, {1, 3, 1}, {1, 3, 0}},
                     {true, {0, 0, 0}, {2, 2, 0}, {4, 0, -3}}}}},
      {MuKind::XX, {{{false, {1, -1, -1}, {3, 0, 0}, {3, 0, -1}},
                     {false, {0, 0, 0}, {2, 1, 1}, {2, 1, 0}},
                     {true, {0, 0, 0}, {3, 0, 0}, {3, 0, -1}}}}},
      {MuKind::YYQ, {{{false, {0, -1, 1}, {1, 1, 0}, {1, 1, -1}},
                      {false, {-1, 0, 2}, {0, 2, 1}, {0, 2, 0}},
                      {true, {-1, 0, 2}, {1, 1, 0}, {2, 0, -2}}}}},
  };
  const int d = np - nq;
  int col;
  if (d > 1) col = 0;
  else if (d == 1) col = 2;
  else if (kind != MuKind::XX || d < 0) col = 1;
  else return std::nullopt;
  const Col& c = tables.at(kind)[static_cast<std::size_t>(col)];
  return TableEntry{c.at_most, c.bound.at(np, nq), c.nsys.at(np, nq), c.cons.at(np, nq)};
}

}  // namespace support
