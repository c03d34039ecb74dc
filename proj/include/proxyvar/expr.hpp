#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace proxyvar {

class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Variables = std::map<std::string, double, std::less<>>;

// Arithmetic over doubles: + - * / ^, unary minus, parentheses, the
// constants pi and e, named variables, and the functions sqrt, exp, log,
// pow(x, y) and kuma_zero_skew_alpha(beta). Variables shadow constants.
// Throws ExpressionError on malformed input or a non-finite result.
double evaluate_expression(std::string_view text, const Variables& vars = {});

}  // namespace proxyvar
