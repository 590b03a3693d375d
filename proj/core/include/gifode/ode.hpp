#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gifode/formula.hpp"
#include "gifode/polyy.hpp"

namespace gifode {

/// dy/dx = P/Q with P, Q polynomial in y. Coefficients are polynomials in x
/// and in the declared parameters (parameters appear as Param jets). P and Q
/// are kept primitive: no common y-factor (when parameter-free), integer
/// coefficients without common content, positive leading coefficient of Q.
struct ODE {
  std::vector<std::string> params;
  PolyYD P;
  PolyYD Q;
  // Reduced f = P/Q when no parameter occurs in P or Q.
  std::optional<RatY> f;

  bool has_params() const { return !f.has_value(); }
  int np() const { return std::max(0, P.degree()); }
  int nq() const { return std::max(0, Q.degree()); }
  // Parameter-free P and Q; throw InvalidArgument when parameters occur.
  PolyYX P_ratx() const;
  PolyYX Q_ratx() const;
};

/// Accepts "dy/dx = EXPR" (or a bare EXPR). Errors: ParseError with position,
/// ZeroDenominator when Q vanishes identically.
ODE parse_ode(const std::string& text, const std::vector<std::string>& params = {});

ODE make_ode(const RatY& f);
ODE make_ode(const PolyYD& P, const PolyYD& Q, const std::vector<std::string>& params);

std::pair<int, int> degrees(const ODE& ode);

// Inverse-function ODE with x and y renamed: f'(x, y) = Q(y, x) / P(y, x).
ODE swap_xy(const ODE& ode);

// Throws PoleAtPoint when Q vanishes at the point.
double eval_f(const ODE& ode, double x, double y, const ParamValues& params = {});

// Binds parameters to rational values; unbound parameters stay symbolic.
ODE instantiate(const ODE& ode, const std::map<std::string, Rat>& values);

// f as an expression tree (parameters as Param nodes).
Tree f_tree(const ODE& ode);
Tree poly_tree(const PolyYD& p, const std::vector<std::string>& params);

// "dy/dx = ..." in the input grammar; parse_ode inverts it.
std::string to_string(const ODE& ode);

bool operator==(const ODE& a, const ODE& b);

}  // namespace gifode
