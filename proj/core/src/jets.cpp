#include "gifode/jets.hpp"

#include <regex>
#include <sstream>

#include "gifode/errors.hpp"

namespace gifode {

DiffPoly diffpoly_dx(const DiffPoly& p, int jet_cap) {
  DiffPoly out;
  for (const auto& [mono, coeff] : p.terms()) {
    RatX dc = coeff.derivative();
    if (!dc.is_zero()) out.add_term(mono, dc);
    for (std::size_t k = 0; k < mono.size(); ++k) {
      const auto& [v, e] = mono[k];
      if (v.constant) continue;
      if (v.order + 1 > jet_cap)
        throw Error(ErrorCode::JetCapExceeded,
                    "derivative order " + std::to_string(v.order + 1) + " exceeds jet cap " +
                        std::to_string(jet_cap));
      JetVar bumped = v;
      bumped.order += 1;
      DiffPoly::Monomial rest;
      for (std::size_t j = 0; j < mono.size(); ++j) {
        if (j == k) {
          if (e > 1) rest.emplace_back(v, e - 1);
        } else {
          rest.push_back(mono[j]);
        }
      }
      DiffPoly::Monomial m = DiffPoly::mono_mul(rest, {{bumped, 1}});
      out.add_term(std::move(m), coeff.scaled(Rat(e)));
    }
  }
  return out;
}

std::optional<DiffPoly> diffpoly_inverse(const DiffPoly& p) {
  if (p.is_zero() || !p.is_constant()) return std::nullopt;
  return DiffPoly(p.constant_coeff().inverse());
}

std::string jet_name(const JetVar& v, const std::vector<std::string>& params, bool show_sub) {
  if (v.side == Side::Param) {
    if (v.index >= 0 && v.index < static_cast<int>(params.size()))
      return params[static_cast<std::size_t>(v.index)];
    return "p" + std::to_string(v.index);
  }
  std::string s;
  if (v.constant) {
    s = (v.side == Side::X ? "c_" : "d_") + std::to_string(v.index);
    if (show_sub) s += "_" + std::to_string(v.sub);
  } else {
    s = (v.side == Side::X ? "a1_" : "a2_") + std::to_string(v.index);
    s.append(static_cast<std::size_t>(v.order), '\'');
  }
  return s;
}

JetNamer default_namer(const std::vector<std::string>& params, bool show_sub) {
  return [params, show_sub](const JetVar& v) { return jet_name(v, params, show_sub); };
}

std::optional<JetVar> parse_jet_name(const std::string& name, const std::vector<std::string>& params) {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i] == name) return JetVar::param(static_cast<int>(i));
  static const std::regex fn_re(R"(a([12])_(\d+)('*))");
  static const std::regex c_re(R"(([cd])_(\d+)(?:_(\d+))?)");
  std::smatch m;
  if (std::regex_match(name, m, fn_re)) {
    return JetVar::function(m[1] == "1" ? Side::X : Side::Y, std::stoi(m[2]),
                            static_cast<int>(m[3].length()));
  }
  if (std::regex_match(name, m, c_re)) {
    int sub = m[3].matched ? std::stoi(m[3]) : 0;
    return JetVar::coefficient(m[1] == "c" ? Side::X : Side::Y, std::stoi(m[2]), sub);
  }
  return std::nullopt;
}

namespace {

template <class Coeff, class CoeffFmt>
std::string format_poly(const SparsePoly<JetVar, Coeff>& p, const JetNamer& namer,
                        CoeffFmt&& fmt) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest-degree terms first reads more naturally.
  std::vector<const std::pair<const typename SparsePoly<JetVar, Coeff>::Monomial, Coeff>*> ts;
  for (const auto& t : p.terms()) ts.push_back(&t);
  std::stable_sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
    return SparsePoly<JetVar, Coeff>::mono_degree(a->first) >
           SparsePoly<JetVar, Coeff>::mono_degree(b->first);
  });
  for (const auto* t : ts) {
    const auto& [mono, coeff] = *t;
    auto [neg, cstr] = fmt(coeff, mono.empty());
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (!cstr.empty()) {
      os << cstr;
      need_star = true;
    }
    for (const auto& [v, e] : mono) {
      if (need_star) os << "*";
      os << namer(v);
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const DiffPoly& p, const JetNamer& namer) {
  return format_poly(p, namer, [](const RatX& c, bool bare) -> std::pair<bool, std::string> {
    if (c.is_constant()) {
      Rat v = c.constant_value();
      bool neg = sgn(v) < 0;
      Rat a = abs(v);
      if (a == 1 && !bare) return {neg, ""};
      return {neg, to_string(a)};
    }
    // Pull a leading minus out of single-term polynomials.
    if (c.is_polynomial() && c.num().coeffs().size() > 0) {
      int nz = 0;
      for (const auto& q : c.num().coeffs()) nz += is_zero(q) ? 0 : 1;
      if (nz == 1 && sgn(c.num().lc()) < 0) return {true, to_string(RatX(-c.num()))};
      if (nz == 1) return {false, to_string(c)};
    }
    return {false, "(" + to_string(c) + ")"};
  });
}

std::string to_string(const AlgPoly& p, const JetNamer& namer) {
  return format_poly(p, namer, [](const Rat& v, bool bare) -> std::pair<bool, std::string> {
    bool neg = sgn(v) < 0;
    Rat a = abs(v);
    if (a == 1 && !bare) return {neg, ""};
    return {neg, to_string(a)};
  });
}

AlgPoly make_primitive(const AlgPoly& p) {
  if (p.is_zero()) return p;
  BigInt l(1), g(0);
  for (const auto& [m, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [m, c] : p.terms()) {
    Rat s = c * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  Rat scale(l, g);
  scale.canonicalize();
  if (sgn(p.leading_term().second) < 0) scale = -scale;
  return p.scaled(scale);
}

}  // namespace gifode
