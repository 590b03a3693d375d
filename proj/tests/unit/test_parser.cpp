#include "doctest.h"
#include "gifode/errors.hpp"
#include "gifode/expr_parser.hpp"

using namespace gifode;

namespace {

long error_position(const std::string& text, const ParseOptions& opts = {}) {
  try {
    parse_expression(text, opts);
  } catch (const Error& e) {
    return e.position();
  }
  return -2;
}

ErrorCode error_code(const std::string& text, const ParseOptions& opts = {}) {
  try {
    parse_expression(text, opts);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("grammar and precedence") {
  CHECK(tree_eval(parse_expression("1 + 2*3^2"), 0, 0) == 19);
  CHECK(tree_eval(parse_expression("-2^2"), 0, 0) == -4);
  CHECK(tree_eval(parse_expression("(x+y)^(-2)"), 1, 1) == doctest::Approx(0.25));
  CHECK(tree_eval(parse_expression("x / 2 / y"), 8, 2) == 2);
  CHECK(tree_eval(parse_expression("0.125*x"), 8, 0) == 1);
  CHECK(tree_eval(parse_expression("exp(ln(x))"), 3, 0) == doctest::Approx(3));
  CHECK(tree_eval(parse_expression("int(2*y, y, 0, y)"), 0, 3) == doctest::Approx(9));
  CHECK(tree_eval(parse_expression("p*x", {{"p"}, true}), 2, 0, {{"p", 4}}) == 8);
}

TEST_CASE("decimals are exact") {
  auto r = tree_to_raty(parse_expression("0.1 + 0.2"));
  REQUIRE(r);
  CHECK(r->y_free_value() == RatX(make_rat(3, 10)));
}

TEST_CASE("errors carry positions") {
  CHECK(error_code("x + ") == ErrorCode::ParseError);
  CHECK(error_position("x + ") == 4);
  CHECK(error_position("x + * y") == 4);
  CHECK(error_position("(x + y") == 6);
  CHECK(error_code("x^y") == ErrorCode::ParseError);
  CHECK(error_position("x^1.5") == 3);
  CHECK(error_code("z + 1") == ErrorCode::ParseError);
  CHECK(error_position("z + 1") == 0);
  CHECK(error_code("ln(x)", {{}, false}) == ErrorCode::ParseError);
  CHECK(error_code("x/0") == ErrorCode::ZeroDenominator);
  CHECK(error_code("x/(1-1)") == ErrorCode::ZeroDenominator);
  CHECK(error_code("x y") == ErrorCode::ParseError);
}
