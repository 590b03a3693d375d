#include "gifode/rational.hpp"

#include <algorithm>

#include "gifode/errors.hpp"

namespace gifode {

Rat make_rat(long num, long den) {
  if (den == 0) throw Error(ErrorCode::ZeroDenominator, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& text) {
  Rat r;
  if (r.set_str(text, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + text + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::ZeroDenominator, "rational with zero denominator");
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }

double to_double(const Rat& r) { return r.get_d(); }

std::vector<BigInt> positive_divisors(const BigInt& n) {
  BigInt m = abs(n);
  if (m == 0) return {};
  std::vector<std::pair<BigInt, int>> factors;
  for (unsigned long p = 2; p <= 1000000UL; ++p) {
    if (m == 1) break;
    BigInt pp(p);
    if (pp * pp > m) break;
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    if (e > 0) factors.emplace_back(pp, e);
  }
  if (m != 1) {
    // Whatever is left must be prime for the divisor set to be complete.
    if (m > BigInt("1000000000000") && mpz_probab_prime_p(m.get_mpz_t(), 25) == 0) return {};
    factors.emplace_back(m, 1);
  }
  std::vector<BigInt> divs{BigInt(1)};
  for (const auto& [p, e] : factors) {
    const std::size_t n0 = divs.size();
    BigInt pk(1);
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n0; ++i) divs.push_back(divs[i] * pk);
    }
    if (divs.size() > 20000) return {};
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs_in) {
  std::vector<Rat> coeffs = coeffs_in;
  while (!coeffs.empty() && is_zero(coeffs.back())) coeffs.pop_back();
  std::vector<Rat> roots;
  if (coeffs.size() <= 1) return roots;
  // Strip the zero root.
  std::size_t shift = 0;
  while (shift < coeffs.size() && is_zero(coeffs[shift])) ++shift;
  if (shift > 0) {
    roots.push_back(Rat(0));
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(shift));
  }
  if (coeffs.size() > 1) {
    // Integer coefficients.
    BigInt l(1);
    for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<BigInt> ints;
    for (const auto& c : coeffs) {
      Rat s = c * l;
      ints.push_back(s.get_num());
    }
    auto eval = [&](const Rat& t) {
      Rat acc(0);
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
      return acc;
    };
    const auto num_divs = positive_divisors(ints.front());
    const auto den_divs = positive_divisors(ints.back());
    for (const auto& p : num_divs) {
      for (const auto& q : den_divs) {
        for (int s : {1, -1}) {
          Rat cand(p * s, q);
          cand.canonicalize();
          if (is_zero(eval(cand)) &&
              std::find(roots.begin(), roots.end(), cand) == roots.end())
            roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool rational_sqrt(const Rat& r, Rat* root) {
  if (sgn(r) < 0) return false;
  BigInt n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  BigInt sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  if (root) {
    *root = Rat(sn, sd);
    root->canonicalize();
  }
  return true;
}

}  // namespace gifode
