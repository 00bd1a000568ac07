#pragma once
// Independent evaluator for function texts and the shared expression corpus.

#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace refeval {

/// Direct recursive-descent evaluator working on characters; nullopt means undefined.
class Reference {
 public:
  Reference(std::string s, double x) : s_(std::move(s)), x_(x) {}

  std::optional<double> run() {
    auto v = sum();
    skip();
    if (i_ != s_.size()) throw std::runtime_error("reference: trailing input");
    return v;
  }

 private:
  using V = std::optional<double>;

  static V fin(double v) { return std::isfinite(v) ? V(v) : std::nullopt; }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  V sum() {
    V a = product();
    for (;;) {
      if (eat('+')) {
        V b = product();
        a = a && b ? fin(*a + *b) : std::nullopt;
      } else if (eat('-')) {
        V b = product();
        a = a && b ? fin(*a - *b) : std::nullopt;
      } else {
        return a;
      }
    }
  }

  V product() {
    V a = negation();
    for (;;) {
      if (eat('*')) {
        V b = negation();
        a = a && b ? fin(*a * *b) : std::nullopt;
      } else if (eat('/')) {
        V b = negation();
        a = a && b && *b != 0.0 ? fin(*a / *b) : std::nullopt;
      } else {
        return a;
      }
    }
  }

  V negation() {
    if (eat('-')) {
      V a = negation();
      return a ? V(-*a) : std::nullopt;
    }
    return power();
  }

  V power() {
    V base = atom();
    if (eat('^')) {
      V e = negation();
      return base && e ? fin(std::pow(*base, *e)) : std::nullopt;
    }
    return base;
  }

  V atom() {
    skip();
    if (eat('(')) {
      V v = sum();
      if (!eat(')')) throw std::runtime_error("reference: missing )");
      return v;
    }
    if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])))) {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(i_), &used);
      i_ += used;
      return v;
    }
    std::string w;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) w += static_cast<char>(std::tolower(s_[i_++]));
    if (w == "x" || w == "p" || w == "r") return x_;
    if (!eat('(')) throw std::runtime_error("reference: bad atom " + w);
    V a = sum();
    if (!eat(')')) throw std::runtime_error("reference: missing )");
    if (!a) return a;
    const double v = *a;
    if (w == "sin") return fin(std::sin(v));
    if (w == "cos") return fin(std::cos(v));
    if (w == "tg") return fin(std::tan(v));
    if (w == "sh") return fin(std::sinh(v));
    if (w == "ch") return fin(std::cosh(v));
    if (w == "th") return fin(std::tanh(v));
    if (w == "ln") return v > 0 ? fin(std::log(v)) : std::nullopt;
    if (w == "lg") return v > 0 ? fin(std::log10(v)) : std::nullopt;
    if (w == "exp") return fin(std::exp(v));
    if (w == "sqrt") return v >= 0 ? fin(std::sqrt(v)) : std::nullopt;
    if (w == "mod") return std::fabs(v);
    if (w == "arcsin") return fin(std::asin(v));
    if (w == "arccos") return fin(std::acos(v));
    if (w == "arctg") return fin(std::atan(v));
    throw std::runtime_error("reference: unknown function " + w);
  }

  std::string s_;
  double x_;
  std::size_t i_{0};
};

inline std::optional<double> reference(const std::string& s, double x) { return Reference(s, x).run(); }

inline const std::vector<std::string> kCorpus = {
    "2*sin(0.7*x-0.9)+0.2*sin(20*x)",
    "x",
    "-x",
    "--x",
    "x^2",
    "-x^2",
    "2^3^2",
    "x^-2",
    "(x+1)*(x-1)",
    "x*x - 1",
    "1/x",
    "1/(x-1)",
    "sqrt(x)",
    "sqrt(mod(x))",
    "ln(x)",
    "lg(x*x+1)",
    "exp(-x*x/2)",
    "sin(x)*cos(x)",
    "tg(x)",
    "sh(x)-ch(x)",
    "th(3*x)",
    "arcsin(x/4)",
    "arccos(x/4)",
    "arctg(x)*2",
    "mod(x-1)+mod(x+1)",
    "SIN(X)+Cos(P)-r",
    "x - 2 - 3",
    "x / 2 / 3",
    "x - (2 - 3)",
    "1+2*3-4/5^2",
    "(((x)))",
    "-(x+3)*2",
    "2*-x",
    "x^0.5",
    "exp(sin(x))^2",
    "ln(exp(x))",
    "lg(100)*x",
    "sqrt(x^2+1)-mod(x)",
    "0.25*x^3-0.5*x^2+x-1",
    "sin(x)/x",
    "cos(2*x)^2+sin(2*x)^2",
    "ch(x)^2-sh(x)^2",
    "1/(1+exp(-x))",
    "x*sin(1/x)",
    "tg(x/2)*ch(x/3)",
    "-sqrt(4-x*x)",
    "arctg(1/x)",
    "2^x - x^2",
    "(x-1)^3/(x+2)",
    "mod(sin(3*x))-0.5",
};

}  // namespace refeval
