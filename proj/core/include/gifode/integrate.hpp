#pragma once

#include <optional>
#include <vector>

#include "gifode/formula.hpp"
#include "gifode/polyy.hpp"

namespace gifode {

struct IntegrationAnchor {
  Rat x0{0};
  Rat y0{1};
};

// coeff(x) * ln(sign * (y - root(x))), sign chosen so the argument is
// positive at the anchor.
struct LogTerm {
  RatX coeff;
  RatX root;
  int sign = 1;
};

/// An antiderivative in y of a rational function of y over Q(x):
///   rational + sum of log terms + int_{y0}^{y} remainder dy'.
struct RationalIntegral {
  RatY rational;
  std::vector<LogTerm> logs;
  RatY remainder;
  Tree tree;

  bool closed_form() const { return remainder.is_zero(); }
  // exp of the integral when it is a rational function of y: no rational
  // part, no remainder and integer constant log coefficients.
  std::optional<RatY> exp_rational() const;
};

// Roots r in Q(x) of p (as a polynomial in y), without multiplicity.
// Candidates come from rational-root factors in x of the constant and
// leading coefficients; roots outside that family are not found.
std::vector<RatX> ratx_roots(const PolyYX& p);

// Throws BadAnchor when a log argument vanishes at the anchor or a root has
// a pole there.
RationalIntegral integrate_rational_dy(const RatY& g, const IntegrationAnchor& anchor = {});
Tree integrate_mu_dy(const RatY& mu, const IntegrationAnchor& anchor = {});

// Antiderivative in x of g(x), anchored at x0 (same decomposition, with x as
// the integration variable; any remainder becomes an IntX node).
RationalIntegral integrate_ratx_dx(const RatX& g, const Rat& x0);

}  // namespace gifode
