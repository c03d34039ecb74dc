#include "proxyvar/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "proxyvar/closed_forms.hpp"
#include "proxyvar/errors.hpp"

namespace proxyvar {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Variables& vars) : text_(text), vars_(vars) {}

  double parse() {
    const double v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("bad expression \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " +
                          what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  double expr() {
    double v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  double power() {
    const double base = primary();
    if (accept('^')) return std::pow(base, unary());
    return base;
  }

  double primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      const double v = expr();
      expect(')');
      return v;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  double number() {
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  double identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (!accept('(')) {
      if (const auto it = vars_.find(name); it != vars_.end()) return it->second;
      if (name == "pi") return std::numbers::pi;
      if (name == "e") return std::numbers::e;
      fail("unknown variable '" + name + "'");
    }
    std::vector<double> args;
    if (!accept(')')) {
      do {
        args.push_back(expr());
      } while (accept(','));
      expect(')');
    }
    auto arity = [&](std::size_t n) {
      if (args.size() != n) fail(name + " takes " + std::to_string(n) + " argument(s)");
    };
    if (name == "sqrt") {
      arity(1);
      return std::sqrt(args[0]);
    }
    if (name == "exp") {
      arity(1);
      return std::exp(args[0]);
    }
    if (name == "log") {
      arity(1);
      return std::log(args[0]);
    }
    if (name == "pow") {
      arity(2);
      return std::pow(args[0], args[1]);
    }
    if (name == "kuma_zero_skew_alpha") {
      arity(1);
      try {
        return kumaraswamy_zero_skew_alpha(args[0]);
      } catch (const ParameterError& e) {
        fail(e.what());
      }
    }
    fail("unknown function '" + name + "'");
  }

  std::string_view text_;
  const Variables& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(std::string_view text, const Variables& vars) {
  const double v = Parser(text, vars).parse();
  if (!std::isfinite(v)) throw ExpressionError("expression \"" + std::string(text) + "\" is not finite");
  return v;
}

}  // namespace proxyvar
