#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gifode/formula.hpp"
#include "gifode/jets.hpp"
#include "gifode/ode.hpp"
#include "gifode/order_guide.hpp"
#include "gifode/polyy.hpp"

namespace gifode {

struct AnsatzMode {
  enum class Kind { Const, PolyX, Func };
  Kind kind = Kind::Const;
  int deg = 0;  // x-degree of each coefficient in PolyX mode

  static AnsatzMode constant() { return {Kind::Const, 0}; }
  static AnsatzMode polyx(int d) { return {Kind::PolyX, d}; }
  static AnsatzMode func() { return {Kind::Func, 0}; }
};

std::string to_string(const AnsatzMode& m);

/// mu = X/Y (X/(Q*Y) for YYQ) with undetermined coefficients. The leading
/// coefficient of Y is pinned to 1.
struct Ansatz {
  MuKind kind = MuKind::YY;
  AnsatzMode mode;
  int nx = 0, ny = 0;
  PolyYD X, Y;
  std::vector<JetVar> unknowns;
};

Ansatz build_ansatz(MuKind kind, int nx, int ny, AnsatzMode mode);

/// Residual of a kind's defining PDE with denominators cleared:
/// residual = numerator / (P^e[0] * Q^e[1] * Y^e[2]).
struct ClearedResidual {
  PolyYD numerator;
  std::array<int, 3> exponents{};
};

// mu = X/Y, or X/(Q*Y) for YYQ. Throws DividesByF when the kind divides by
// f and P vanishes.
ClearedResidual cleared_residual(MuKind kind, const ODE& ode, const PolyYD& X, const PolyYD& Y,
                                 int jet_cap = kDefaultJetCap);

// Exact residual as a reduced rational function (parameter-free ODE).
// YYQ is treated as YY since mu is given explicitly.
RatY mu_residual(MuKind kind, const ODE& ode, const RatY& mu);
// Works with parameters too: true iff the cleared numerator vanishes.
bool residual_is_zero(MuKind kind, const ODE& ode, const RatY& mu);

struct DeterminingSystem {
  MuKind kind = MuKind::YY;
  Ansatz ansatz;
  std::vector<std::string> params;
  std::vector<DiffPoly> equations;  // nonzero coefficients of the cleared numerator
  std::vector<int> powers;          // y-power each equation came from
  ClearedResidual residual;
  int n_sys = 0;
  int n_unknowns = 0;
};

DeterminingSystem build_system(MuKind kind, const ODE& ode, const Ansatz& ansatz,
                               int jet_cap = kDefaultJetCap);

// Inter-factor relations; compositions are chained through YY and YX.
RatY convert_mu(MuKind from, MuKind to, const RatY& mu, const ODE& ode);

struct ClassicalFactors {
  Tree mu_y;
  Tree mu_x;
};

// mu_y = F2 * exp(int mu_yy dy), mu_x = -f * mu_y.
ClassicalFactors classical_factors(const ODE& ode, const RatY& mu_yy, const Tree& F2,
                                   const Rat& anchor_y = Rat(1));

// One equation per line, jets rendered with primes.
std::string export_system(const DeterminingSystem& sys);
// Inverse of export_system.
std::vector<DiffPoly> parse_exported(const std::string& text,
                                     const std::vector<std::string>& params = {});
DiffPoly parse_diffpoly(const std::string& line, const std::vector<std::string>& params = {});

}  // namespace gifode
