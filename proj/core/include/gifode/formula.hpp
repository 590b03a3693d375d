#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gifode/polyy.hpp"
#include "gifode/rational.hpp"

namespace gifode {

enum class NodeKind { Const, VarX, VarY, Param, Add, Mul, PowInt, Ln, Exp, IntY, IntX };

struct Node;
using Tree = std::shared_ptr<const Node>;

/// Expression node. Integral nodes integrate their single child from
/// `value` (the anchor) up to the current value of their variable; inside
/// the integrand that variable is the integration dummy.
struct Node {
  NodeKind kind = NodeKind::Const;
  Rat value;         // Const value or integral anchor
  int power = 0;     // PowInt exponent
  std::string name;  // Param name
  std::vector<Tree> kids;
};

// Builders apply light canonicalization: constant folding, flattening,
// merging equal terms and equal powers, exp/ln cancellation.
Tree tree_const(const Rat& c);
Tree tree_const(long c);
Tree tree_x();
Tree tree_y();
Tree tree_param(const std::string& name);
Tree tree_add(std::vector<Tree> terms);
Tree tree_mul(std::vector<Tree> factors);
Tree tree_pow(const Tree& base, int k);
Tree tree_ln(const Tree& u);
Tree tree_exp(const Tree& u);
Tree tree_int_y(const Rat& anchor, const Tree& integrand);
Tree tree_int_x(const Rat& anchor, const Tree& integrand);

Tree operator+(const Tree& a, const Tree& b);
Tree operator-(const Tree& a, const Tree& b);
Tree operator-(const Tree& a);
Tree operator*(const Tree& a, const Tree& b);
Tree operator/(const Tree& a, const Tree& b);

bool is_const(const Tree& t, const Rat& c);
bool is_zero(const Tree& t);
bool tree_equal(const Tree& a, const Tree& b);
bool contains_kind(const Tree& t, NodeKind k);
// Deepest nesting of IntY/IntX nodes.
int integral_depth(const Tree& t);
int tree_depth(const Tree& t);

Tree tree_from(const PolyX& p, NodeKind var = NodeKind::VarX);
Tree tree_from(const RatX& r, NodeKind var = NodeKind::VarX);
Tree tree_from(const PolyYX& p);
Tree tree_from(const RatY& r);
// Exact conversion back when the tree is a rational function of x and y.
std::optional<RatY> tree_to_raty(const Tree& t);

enum class TreeVar { X, Y };

Tree tree_diff(const Tree& t, TreeVar v);
// Replaces the free variable v by a constant. An integral over v anchored at
// the same constant collapses to zero; other anchors throw InvalidArgument.
Tree tree_substitute(const Tree& t, TreeVar v, const Rat& value);
// Exchanges x and y, including the integral node kinds.
Tree tree_swap_xy(const Tree& t);

struct QuadSettings {
  double abs_tol = 1e-10;
  int depth_cap = 3;          // maximal nesting of integral nodes
  int max_intervals = 4000;   // per quadrature call
  long max_evaluations = 400000;  // integrand samples per tree_eval, all levels
};

// Adaptive Gauss-Kronrod (7/15) quadrature with an absolute tolerance.
// Non-finite samples or non-convergence raise PoleOnPath, as does running
// past max_evaluations inside tree_eval.
double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                          const QuadSettings& q = {});

using ParamValues = std::map<std::string, double>;

// Errors: DomainError (ln of a nonpositive value), PoleAtPoint (zero raised to
// a negative power), PoleOnPath, DepthExceeded.
double tree_eval(const Tree& t, double x, double y, const ParamValues& params = {},
                 const QuadSettings& q = {});

// Text in the input grammar extended with ln(...), exp(...),
// int(expr, y, y0, y) and int(expr, x, x0, x).
std::string to_string(const Tree& t);

}  // namespace gifode
