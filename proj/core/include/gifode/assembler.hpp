#pragma once

#include <optional>

#include "gifode/formula.hpp"
#include "gifode/integrate.hpp"
#include "gifode/ode.hpp"

namespace gifode {

struct AssemblyOptions {
  Rat anchor_x0{0};
  Rat anchor_y0{1};
  // Relative tolerance of the y-independence spot checks.
  double tol = 1e-9;
  // Move the anchors off poles and log zeros by small rational offsets.
  bool shift_anchors = true;
};

/// First integral zeta = F1(x) + F2(x) * W(x, y) where W is a y-antiderivative
/// of exp(M) and M a y-antiderivative of mu_yy.
struct Assembly {
  Tree zeta, F1, F2, M, W;
  // The y-free bracket M_x + f_y + f*mu_yy, i.e. -F2'/F2.
  Tree B;
  std::optional<RatX> B_exact;
  Rat x0, y0;
};

// Requires mu_residual(YY, ode, mu_yy) = 0 (else AssemblyInconsistent).
// Errors: BadAnchor when no usable anchor exists, AssemblyInconsistent when
// the y-independence spot check fails.
Assembly assemble(const ODE& ode, const RatY& mu_yy, const AssemblyOptions& opts = {});
Tree assemble_zeta(const ODE& ode, const RatY& mu_yy, const AssemblyOptions& opts = {});

}  // namespace gifode
