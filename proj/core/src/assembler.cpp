#include "gifode/assembler.hpp"

#include <cmath>

#include "gifode/determining.hpp"
#include "gifode/errors.hpp"

namespace gifode {

namespace {

// Rational function whose coefficients are constants and whose variable
// (printed as y) stands for x.
RatX as_x(const RatY& r) {
  auto to_px = [](const PolyYX& p) {
    std::vector<Rat> cs;
    for (const auto& c : p.coeffs()) {
      if (!c.is_constant()) throw Error(ErrorCode::InvalidArgument, "expected constant coefficients");
      cs.push_back(c.constant_value());
    }
    return PolyX(std::move(cs));
  };
  return RatX(to_px(r.num()), to_px(r.den()));
}

Rat eval_at(const PolyYX& p, const Rat& x0, const Rat& y0) {
  RatX v = p.eval_y(RatX(y0));
  if (is_zero(v.den().eval(x0))) throw Error(ErrorCode::BadAnchor, "coefficient pole at the anchor");
  return v.eval(x0);
}

void check_anchor(const ODE& ode, const RatY& mu, const Rat& x0, const Rat& y0) {
  const PolyYX Q = ode.Q_ratx();
  if (Q.eval_y(RatX(y0)).is_zero() || is_zero(eval_at(Q, x0, y0)))
    throw Error(ErrorCode::BadAnchor, "f has a pole at the anchor");
  if (mu.den().eval_y(RatX(y0)).is_zero() || is_zero(eval_at(mu.den(), x0, y0)))
    throw Error(ErrorCode::BadAnchor, "mu_yy has a pole at the anchor");
  eval_at(ode.P_ratx(), x0, y0);
  eval_at(mu.num(), x0, y0);
}

Tree at_y0(const Tree& t, const Rat& y0) { return tree_substitute(t, TreeVar::Y, y0); }

std::optional<RatX> exact_x(const Tree& t) {
  auto r = tree_to_raty(t);
  if (!r || !r->is_y_free()) return std::nullopt;
  return r->y_free_value();
}

void spot_check(const Tree& bracket, const Tree& B, const Rat& x0, const Rat& y0, double tol) {
  const double dx[] = {0.3, -0.2, 0.45};
  const double dy[] = {0.25, -0.15, 0.4};
  for (double a : dx) {
    for (double b : dy) {
      double x = to_double(x0) + a, y = to_double(y0) + b;
      double u, v;
      try {
        u = tree_eval(bracket, x, y);
        v = tree_eval(B, x, y);
      } catch (const Error&) {
        continue;
      }
      if (!std::isfinite(u) || !std::isfinite(v)) continue;
      if (std::abs(u - v) > tol * std::max(1.0, std::abs(v)))
        throw Error(ErrorCode::AssemblyInconsistent,
                    "the F2 bracket depends on y (|difference| = " + std::to_string(std::abs(u - v)) + ")");
    }
  }
}

Assembly assemble_at(const ODE& ode, const RatY& mu, const Rat& x0, const Rat& y0, double tol) {
  check_anchor(ode, mu, x0, y0);
  Assembly out;
  out.x0 = x0;
  out.y0 = y0;
  const RatY& f = *ode.f;
  RationalIntegral MI = integrate_rational_dy(mu, {x0, y0});
  out.M = MI.tree;

  // B(x) = M_x + f_y + f mu: y-free because its y-derivative is the mu_yy equation.
  Tree f_t = tree_from(f);
  Tree rest_t = tree_from(f.dy() + f * mu);
  Tree bracket = tree_diff(out.M, TreeVar::X) + rest_t;
  out.B = at_y0(bracket, y0);
  out.B_exact = exact_x(out.B);
  spot_check(bracket, out.B, x0, y0, tol);

  // F2 = exp(-int B dx).
  std::optional<RatX> F2_exact;
  if (out.B_exact) {
    RationalIntegral BI = integrate_ratx_dx(*out.B_exact, x0);
    if (auto e = BI.exp_rational()) {
      F2_exact = as_x(*e).inverse();
      out.F2 = tree_from(*F2_exact);
    } else {
      out.F2 = tree_exp(-BI.tree);
    }
  } else {
    out.F2 = tree_exp(-tree_int_x(x0, out.B));
  }

  // W: y-antiderivative of exp(M).
  std::optional<RatY> E = MI.exp_rational();
  Tree expM = E ? tree_from(*E) : tree_exp(out.M);
  out.W = E ? integrate_rational_dy(*E, {x0, y0}).tree : tree_int_y(y0, expM);

  // F1' = -F2 K with K = [-B W + W_x + f exp(M)] at y = y0 (y-free as well).
  Tree K = at_y0(-(out.B * out.W) + tree_diff(out.W, TreeVar::X) + f_t * expM, y0);
  auto K_exact = exact_x(K);
  if (F2_exact && K_exact) {
    RatX g = -(*F2_exact * *K_exact);
    out.F1 = g.is_zero() ? tree_const(0L) : integrate_ratx_dx(g, x0).tree;
  } else {
    out.F1 = tree_int_x(x0, -(out.F2 * K));
  }
  out.zeta = out.F1 + out.F2 * out.W;
  return out;
}

}  // namespace

Assembly assemble(const ODE& ode, const RatY& mu_yy, const AssemblyOptions& opts) {
  if (ode.has_params()) throw Error(ErrorCode::InvalidArgument, "assembly needs a parameter-free ODE");
  if (!mu_residual(MuKind::YY, ode, mu_yy).is_zero())
    throw Error(ErrorCode::AssemblyInconsistent, "mu_yy does not satisfy its defining equation");
  static const Rat kOffsets[] = {Rat(0), Rat(1, 2), Rat(-1, 2), Rat(1, 3), Rat(-1, 3), Rat(1, 4),
                                 Rat(2), Rat(-2), Rat(3, 2), Rat(-3, 2), Rat(2, 5), Rat(-2, 5)};
  std::string last;
  for (const Rat& dy : kOffsets) {
    for (const Rat& dx : kOffsets) {
      try {
        return assemble_at(ode, mu_yy, opts.anchor_x0 + dx, opts.anchor_y0 + dy, opts.tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BadAnchor && e.code() != ErrorCode::PoleAtPoint &&
            e.code() != ErrorCode::ZeroDenominator)
          throw;
        last = e.what();
      }
      if (!opts.shift_anchors) throw Error(ErrorCode::BadAnchor, last);
    }
  }
  throw Error(ErrorCode::BadAnchor, "no usable anchor near the requested one: " + last);
}

Tree assemble_zeta(const ODE& ode, const RatY& mu_yy, const AssemblyOptions& opts) {
  return assemble(ode, mu_yy, opts).zeta;
}

}  // namespace gifode
