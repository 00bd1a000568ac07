#pragma once
/**
 * @file expr.hpp
 * @brief Interpreter of function texts: analyse() turns a text into a
 * program in evaluation order, calculate() runs it for one argument.
 *
 * Grammar, from the loosest binding:
 *   expr    := term { ('+' | '-') term }
 *   term    := unary { ('*' | '/') unary }
 *   unary   := { '-' } power
 *   power   := primary [ '^' unary ]            right-associative
 *   primary := number | variable | function '(' expr ')' | '(' expr ')'
 */

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "movekit/geometry.hpp"

namespace movekit {

enum class Function { Sin, Cos, Tg, Sh, Ch, Th, Ln, Lg, Exp, Sqrt, Mod, Arcsin, Arccos, Arctg };

inline std::optional<Function> function_by_name(std::string_view lower) {
  static constexpr std::pair<std::string_view, Function> kNames[] = {
      {"sin", Function::Sin},       {"cos", Function::Cos},       {"tg", Function::Tg},
      {"sh", Function::Sh},         {"ch", Function::Ch},         {"th", Function::Th},
      {"ln", Function::Ln},         {"lg", Function::Lg},         {"exp", Function::Exp},
      {"sqrt", Function::Sqrt},     {"mod", Function::Mod},       {"arcsin", Function::Arcsin},
      {"arccos", Function::Arccos}, {"arctg", Function::Arctg},
  };
  for (const auto& [name, f] : kNames)
    if (name == lower) return f;
  return std::nullopt;
}

struct Elem {
  enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
  Kind kind{Kind::Number};
  double value{0.0};
  Function fn{Function::Sin};
};

struct RpnProgram {
  std::vector<Elem> elements;
};

enum class ParseErrorKind { UnknownToken, UnbalancedBracket, MissingOperand, MissingOperator, EmptyInput, BadNumber };

inline const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::UnknownToken: return "unknown-token";
    case ParseErrorKind::UnbalancedBracket: return "unbalanced-bracket";
    case ParseErrorKind::MissingOperand: return "missing-operand";
    case ParseErrorKind::MissingOperator: return "missing-operator";
    case ParseErrorKind::EmptyInput: return "empty-input";
    case ParseErrorKind::BadNumber: return "bad-number";
  }
  return "unknown-token";
}

struct ParseError {
  ParseErrorKind kind;
  std::size_t position;
  bool operator==(const ParseError&) const = default;
};

using AnalyseResult = std::variant<RpnProgram, ParseError>;

namespace detail {

struct Token {
  enum class Kind { Number, Variable, Call, Plus, Minus, Star, Slash, Caret, LParen, RParen, End, Bad };
  Kind kind;
  std::size_t pos;
  double value{0.0};
  Function fn{Function::Sin};
  ParseErrorKind bad{ParseErrorKind::UnknownToken};
};

struct ParseFailure {
  ParseError error;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RpnProgram run() {
    tokenize();
    if (tokens_.front().kind == Token::Kind::End) fail(ParseErrorKind::EmptyInput, 0);
    expr();
    const Token& t = peek();
    if (t.kind == Token::Kind::RParen) fail(ParseErrorKind::UnbalancedBracket, t.pos);
    if (t.kind != Token::Kind::End) fail(ParseErrorKind::MissingOperator, t.pos);
    return std::move(out_);
  }

 private:
  static constexpr int kMaxDepth = 200;

  // a lexical error is reported only when parsing reaches it, so earlier syntax errors win
  [[noreturn]] void fail(ParseErrorKind k, std::size_t pos) const {
    const Token& last = tokens_.back();
    if (last.kind == Token::Kind::Bad && last.pos == pos) k = last.bad;
    throw ParseFailure{{k, pos}};
  }

  void lex_error(ParseErrorKind k, std::size_t pos) { tokens_.push_back({Token::Kind::Bad, pos, 0.0, Function::Sin, k}); }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        while (i < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[i])) || text_[i] == '.')) ++i;
        const std::string_view lit = text_.substr(start, i - start);
        const auto dot = lit.find('.');
        const bool well_formed = lit.front() != '.' && lit.back() != '.' &&
                                 (dot == std::string_view::npos || lit.find('.', dot + 1) == std::string_view::npos);
        double v = 0.0;
        if (!well_formed) return lex_error(ParseErrorKind::BadNumber, start);
        auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), v);
        if (ec != std::errc{} || ptr != lit.data() + lit.size() || !std::isfinite(v))
          return lex_error(ParseErrorKind::BadNumber, start);
        tokens_.push_back({Token::Kind::Number, start, v});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        while (i < text_.size() && std::isalpha(static_cast<unsigned char>(text_[i]))) ++i;
        std::string word(text_.substr(start, i - start));
        for (char& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (word == "x" || word == "p" || word == "r") {
          tokens_.push_back({Token::Kind::Variable, start});
        } else if (auto f = function_by_name(word)) {
          tokens_.push_back({Token::Kind::Call, start, 0.0, *f});
        } else {
          return lex_error(ParseErrorKind::UnknownToken, start);
        }
        continue;
      }
      Token::Kind k;
      switch (c) {
        case '+': k = Token::Kind::Plus; break;
        case '-': k = Token::Kind::Minus; break;
        case '*': k = Token::Kind::Star; break;
        case '/': k = Token::Kind::Slash; break;
        case '^': k = Token::Kind::Caret; break;
        case '(': k = Token::Kind::LParen; break;
        case ')': k = Token::Kind::RParen; break;
        default: return lex_error(ParseErrorKind::UnknownToken, start);
      }
      tokens_.push_back({k, start});
      ++i;
    }
    tokens_.push_back({Token::Kind::End, text_.size()});
  }

  const Token& peek() const { return tokens_[at_]; }
  const Token& next() { return tokens_[at_++]; }

  void emit(Elem::Kind k, double v = 0.0, Function f = Function::Sin) { out_.elements.push_back({k, v, f}); }

  void expr() {
    term();
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      const bool plus = next().kind == Token::Kind::Plus;
      term();
      emit(plus ? Elem::Kind::Add : Elem::Kind::Sub);
    }
  }

  void term() {
    unary();
    while (peek().kind == Token::Kind::Star || peek().kind == Token::Kind::Slash) {
      const bool mul = next().kind == Token::Kind::Star;
      unary();
      emit(mul ? Elem::Kind::Mul : Elem::Kind::Div);
    }
  }

  void unary() {
    int minus = 0;
    while (peek().kind == Token::Kind::Minus) {
      next();
      ++minus;
    }
    power();
    for (int i = 0; i < minus; ++i) emit(Elem::Kind::Negate);
  }

  void power() {
    primary();
    if (peek().kind == Token::Kind::Caret) {
      next();
      enter(peek().pos);
      unary();
      --depth_;
      emit(Elem::Kind::Pow);
    }
  }

  void enter(std::size_t pos) {
    if (++depth_ > kMaxDepth) fail(ParseErrorKind::UnbalancedBracket, pos);
  }

  void closing() {
    const Token& t = peek();
    if (t.kind == Token::Kind::RParen) {
      next();
      return;
    }
    if (t.kind == Token::Kind::End) fail(ParseErrorKind::UnbalancedBracket, t.pos);
    fail(ParseErrorKind::MissingOperator, t.pos);
  }

  void primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number:
        next();
        emit(Elem::Kind::Number, t.value);
        return;
      case Token::Kind::Variable:
        next();
        emit(Elem::Kind::Variable);
        return;
      case Token::Kind::Call: {
        const Function f = next().fn;
        if (peek().kind != Token::Kind::LParen) fail(ParseErrorKind::UnbalancedBracket, peek().pos);
        enter(next().pos);
        expr();
        closing();
        --depth_;
        emit(Elem::Kind::Call, 0.0, f);
        return;
      }
      case Token::Kind::LParen:
        enter(next().pos);
        expr();
        closing();
        --depth_;
        return;
      default: fail(ParseErrorKind::MissingOperand, t.pos);
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t at_{0};
  int depth_{0};
  RpnProgram out_;
};

}  // namespace detail

/// Parses a function text; every failure carries its kind and position.
inline AnalyseResult analyse(std::string_view text) {
  try {
    return detail::Parser(text).run();
  } catch (const detail::ParseFailure& f) {
    return f.error;
  }
}

struct EvalOutcome {
  bool ok{false};
  double value{0.0};
};

inline double apply_function(Function f, double a) {
  switch (f) {
    case Function::Sin: return std::sin(a);
    case Function::Cos: return std::cos(a);
    case Function::Tg: return std::tan(a);
    case Function::Sh: return std::sinh(a);
    case Function::Ch: return std::cosh(a);
    case Function::Th: return std::tanh(a);
    case Function::Ln: return a > 0.0 ? std::log(a) : std::nan("");
    case Function::Lg: return a > 0.0 ? std::log10(a) : std::nan("");
    case Function::Exp: return std::exp(a);
    case Function::Sqrt: return a >= 0.0 ? std::sqrt(a) : std::nan("");
    case Function::Mod: return std::fabs(a);
    case Function::Arcsin: return std::asin(a);
    case Function::Arccos: return std::acos(a);
    case Function::Arctg: return std::atan(a);
  }
  return std::nan("");
}

/// Stack evaluation; ok is false for domain violations and non-finite results.
inline EvalOutcome calculate(const RpnProgram& p, double arg) {
  std::vector<double> stack;
  stack.reserve(p.elements.size());
  for (const Elem& e : p.elements) {
    double r = 0.0;
    switch (e.kind) {
      case Elem::Kind::Number: r = e.value; break;
      case Elem::Kind::Variable: r = arg; break;
      case Elem::Kind::Negate:
      case Elem::Kind::Call: {
        if (stack.empty()) return {};
        const double a = stack.back();
        stack.pop_back();
        r = e.kind == Elem::Kind::Negate ? -a : apply_function(e.fn, a);
        break;
      }
      default: {
        if (stack.size() < 2) return {};
        const double b = stack.back();
        stack.pop_back();
        const double a = stack.back();
        stack.pop_back();
        switch (e.kind) {
          case Elem::Kind::Add: r = a + b; break;
          case Elem::Kind::Sub: r = a - b; break;
          case Elem::Kind::Mul: r = a * b; break;
          case Elem::Kind::Div:
            if (b == 0.0) return {};
            r = a / b;
            break;
          default: r = std::pow(a, b); break;
        }
      }
    }
    if (!std::isfinite(r)) return {};
    stack.push_back(r);
  }
  if (stack.size() != 1) return {};
  return {true, stack.back()};
}

/// One sample per pixel column; y is empty where the function is undefined.
struct CurveSample {
  double x;
  std::optional<double> y;
};

inline std::vector<CurveSample> sample_y_of_x(const RpnProgram& p, double x_lo, double x_hi, int n_pixels) {
  std::vector<CurveSample> out;
  if (n_pixels < 2) return out;
  const LinearMap m{x_lo, x_hi, 0.0, static_cast<double>(n_pixels - 1)};
  for (int i = 0; i < n_pixels; ++i) {
    const double x = map_value(m, static_cast<double>(i));
    const auto r = calculate(p, x);
    out.push_back({x, r.ok ? std::optional<double>(r.value) : std::nullopt});
  }
  return out;
}

/// Sweeps r from r_lo to r_hi inclusive; a failing X or Y leaves a gap.
inline std::vector<std::optional<Point2>> sample_parametric(const RpnProgram& px, const RpnProgram& py, double r_lo,
                                                            double r_hi, double step) {
  std::vector<std::optional<Point2>> out;
  if (!(step > 0.0) || r_hi < r_lo) return out;
  auto sample = [&](double r) -> std::optional<Point2> {
    const auto x = calculate(px, r);
    const auto y = calculate(py, r);
    if (!x.ok || !y.ok) return std::nullopt;
    return Point2{x.value, y.value};
  };
  const double span = r_hi - r_lo;
  const auto n = static_cast<long long>(std::floor(span / step + 1e-9));
  for (long long k = 0; k <= n; ++k) out.push_back(sample(r_lo + static_cast<double>(k) * step));
  if (r_lo + static_cast<double>(n) * step < r_hi - 1e-9 * std::max(1.0, std::fabs(r_hi))) out.push_back(sample(r_hi));
  return out;
}

/// Splits samples into polylines at every gap.
inline std::vector<std::vector<Point2>> split_polylines(const std::vector<std::optional<Point2>>& pts) {
  std::vector<std::vector<Point2>> out;
  bool open = false;
  for (const auto& p : pts) {
    if (!p) {
      open = false;
      continue;
    }
    if (!open) out.emplace_back();
    out.back().push_back(*p);
    open = true;
  }
  return out;
}

inline std::vector<std::vector<Point2>> split_polylines(const std::vector<CurveSample>& samples) {
  std::vector<std::optional<Point2>> pts;
  for (const auto& s : samples) pts.push_back(s.y ? std::optional<Point2>(Point2{s.x, *s.y}) : std::nullopt);
  return split_polylines(pts);
}

}  // namespace movekit
