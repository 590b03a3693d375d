#include "gifode/expr_parser.hpp"

#include <algorithm>
#include <cctype>

#include "gifode/errors.hpp"

namespace gifode {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opts, long offset)
      : s_(text), opts_(opts), offset_(offset) {}

  Tree parse_all() {
    Tree t = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    long p = offset_ + static_cast<long>(at);
    throw Error(ErrorCode::ParseError, msg + " at position " + std::to_string(p), p);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  Tree expr() {
    Tree t = term();
    for (;;) {
      if (accept('+')) {
        t = t + term();
      } else if (accept('-')) {
        t = t - term();
      } else {
        return t;
      }
    }
  }

  Tree term() {
    Tree t = unary();
    for (;;) {
      if (accept('*')) {
        t = t * unary();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        Tree d = unary();
        if (is_zero(d)) {
          long p = offset_ + static_cast<long>(at);
          throw Error(ErrorCode::ZeroDenominator, "division by zero at position " + std::to_string(p), p);
        }
        t = t / d;
      } else {
        return t;
      }
    }
  }

  Tree unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Tree power() {
    Tree b = primary();
    if (!accept('^')) return b;
    std::size_t at = pos_;
    int k = signed_int();
    if (k < 0 && is_zero(b)) fail_at(at, "zero raised to a negative power");
    return tree_pow(b, k);
  }

  int signed_int() {
    bool paren = accept('(');
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 6) fail_at(start, "exponent too large");
    int k = std::stoi(s_.substr(start, pos_ - start));
    if (paren) expect(')');
    return neg ? -k : k;
  }

  Tree number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string int_part = s_.substr(start, pos_ - start);
    std::string frac;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      frac = s_.substr(fs, pos_ - fs);
    }
    if (int_part.empty() && frac.empty()) fail_at(start, "malformed number");
    Rat v = parse_rat(int_part.empty() ? "0" : int_part);
    if (!frac.empty()) {
      BigInt scale(1);
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      Rat f(BigInt(frac), scale);
      f.canonicalize();
      v += f;
    }
    return tree_const(v);
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Tree primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Tree t = expr();
      expect(')');
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string id = identifier();
      if (id == "x") return tree_x();
      if (id == "y") return tree_y();
      if (id == "ln" || id == "exp" || id == "int") {
        if (!opts_.allow_transcendental) fail_at(at, "'" + id + "' is not allowed here");
        return call(id, at);
      }
      if (std::find(opts_.params.begin(), opts_.params.end(), id) != opts_.params.end())
        return tree_param(id);
      fail_at(at, "undeclared identifier '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Tree call(const std::string& fn, std::size_t at) {
    expect('(');
    Tree arg = expr();
    if (fn == "ln") {
      expect(')');
      if (is_const_node(arg) && sgn(arg->value) <= 0) fail_at(at, "ln of a nonpositive constant");
      return tree_ln(arg);
    }
    if (fn == "exp") {
      expect(')');
      return tree_exp(arg);
    }
    expect(',');
    skip_ws();
    std::size_t var_at = pos_;
    std::string var = identifier();
    if (var != "x" && var != "y") fail_at(var_at, "integration variable must be x or y");
    expect(',');
    std::size_t anchor_at = pos_;
    Tree anchor = expr();
    if (!is_const_node(anchor)) fail_at(anchor_at, "integration anchor must be a rational constant");
    expect(',');
    skip_ws();
    std::size_t upper_at = pos_;
    if (identifier() != var) fail_at(upper_at, "upper limit must be the integration variable");
    expect(')');
    return var == "y" ? tree_int_y(anchor->value, arg) : tree_int_x(anchor->value, arg);
  }

  static bool is_const_node(const Tree& t) { return t->kind == NodeKind::Const; }

  const std::string& s_;
  const ParseOptions& opts_;
  long offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_expression(const std::string& text, const ParseOptions& opts, long offset) {
  return Parser(text, opts, offset).parse_all();
}

}  // namespace gifode
