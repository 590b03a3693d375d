#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gifode/polyx.hpp"
#include "gifode/sparse_poly.hpp"

namespace gifode {

enum class Side : std::uint8_t { X = 1, Y = 2, Param = 3 };

/// An unknown coefficient of the ansatz (or a declared constant parameter).
///
/// Function jets stand for the `order`-th x-derivative of a1_index(x)
/// (side X) or a2_index(x) (side Y). Constant jets are derivative-free
/// unknowns; in the polynomial-in-x ansatz `sub` is the power of x the
/// constant multiplies. Parameters are constant jets with side Param and
/// `index` pointing into the ODE's parameter list.
struct JetVar {
  Side side = Side::X;
  int index = 0;
  int order = 0;
  int sub = 0;
  bool constant = false;

  auto operator<=>(const JetVar&) const = default;

  static JetVar function(Side s, int i, int order = 0) { return {s, i, order, 0, false}; }
  static JetVar coefficient(Side s, int i, int sub = 0) { return {s, i, 0, sub, true}; }
  static JetVar param(int i) { return {Side::Param, i, 0, 0, true}; }
};

using DiffPoly = SparsePoly<JetVar, RatX>;
using AlgPoly = SparsePoly<JetVar, Rat>;

inline constexpr int kDefaultJetCap = 3;

/// Total x-derivative. RatX coefficients are differentiated and every
/// function jet is bumped one order by the product rule; constant jets have
/// zero derivative. Throws JetCapExceeded when an order would pass `jet_cap`.
DiffPoly diffpoly_dx(const DiffPoly& p, int jet_cap = kDefaultJetCap);

// Returns 1/p when p is a nonzero pure-RatX constant.
std::optional<DiffPoly> diffpoly_inverse(const DiffPoly& p);

using JetNamer = std::function<std::string(const JetVar&)>;

// a1_0, a2_3'' for function jets; c_0 / d_1 for constants (c_0_2 when the
// polynomial-in-x ansatz needs the power index); parameters by name.
std::string jet_name(const JetVar& v, const std::vector<std::string>& params = {},
                     bool show_sub = false);
JetNamer default_namer(const std::vector<std::string>& params = {}, bool show_sub = false);

// Inverse of jet_name over the same parameter list.
std::optional<JetVar> parse_jet_name(const std::string& name,
                                     const std::vector<std::string>& params = {});

std::string to_string(const DiffPoly& p, const JetNamer& namer);
std::string to_string(const AlgPoly& p, const JetNamer& namer);

// Makes integer coefficients coprime with a positive leading coefficient.
AlgPoly make_primitive(const AlgPoly& p);

}  // namespace gifode
