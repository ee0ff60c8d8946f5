#include "hconv/parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace hconv {

namespace {

std::string describe_expected(const std::set<std::string>& expected) {
  std::string out;
  for (const auto& e : expected) {
    if (!out.empty()) out += ", ";
    out += e;
  }
  return out;
}

std::string build_message(std::size_t offset, const std::set<std::string>& expected,
                          const std::string& found, const std::string& detail) {
  std::string msg = "parse error at offset " + std::to_string(offset);
  if (!detail.empty()) msg += ": " + detail;
  if (!expected.empty()) msg += ": expected one of {" + describe_expected(expected) + "}";
  msg += ", found " + found;
  return msg;
}

enum class Kind { number, variable, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  Kind kind;
  std::size_t offset;
  std::string text;
  Rational number;      // Kind::number
  std::size_t index{};  // Kind::variable, 0-based
};

std::string describe(const Token& t) {
  return t.kind == Kind::end ? std::string("end of input") : "'" + t.text + "'";
}

const std::set<std::string> kBaseStart{"RATIONAL", "VAR", "(", "-"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ == text_.size()) {
        out.push_back({Kind::end, pos_, "", 0, 0});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool digit_at(std::size_t i) const {
    return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
  }

  std::string found_at(std::size_t i) const {
    if (i >= text_.size()) return "end of input";
    return "'" + std::string(1, text_[i]) + "'";
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    auto single = [&](Kind k) {
      ++pos_;
      return Token{k, start, std::string(1, c), 0, 0};
    };
    switch (c) {
      case '+': return single(Kind::plus);
      case '-': return single(Kind::minus);
      case '*': return single(Kind::star);
      case '^': return single(Kind::caret);
      case '(': return single(Kind::lparen);
      case ')': return single(Kind::rparen);
      default: break;
    }
    if (c == 'x') {
      ++pos_;
      if (!digit_at(pos_)) throw ParseError(pos_, {"NAT"}, found_at(pos_), "variable needs an index");
      const std::size_t index_offset = pos_;
      const std::string idx = digits();
      if (idx.size() > 4 || std::stoul(idx) == 0 || std::stoul(idx) > kMaxVariable) {
        throw ParseError(index_offset, {}, "'" + idx + "'",
                         "variable index must be between 1 and " + std::to_string(kMaxVariable));
      }
      return Token{Kind::variable, start, "x" + idx, 0, std::stoul(idx) - 1};
    }
    if (digit_at(pos_)) {
      std::string num = digits();
      std::string text = num;
      Rational value(Integer(num, 10));
      // The denominator may be separated by whitespace from the slash.
      std::size_t look = pos_;
      while (look < text_.size() && std::isspace(static_cast<unsigned char>(text_[look]))) ++look;
      if (look < text_.size() && text_[look] == '/') {
        pos_ = look + 1;
        skip_space();
        if (!digit_at(pos_)) throw ParseError(pos_, {"POSINT"}, found_at(pos_));
        const std::size_t den_offset = pos_;
        const std::string den = digits();
        const Integer d(den, 10);
        if (d == 0) throw ParseError(den_offset, {"POSINT"}, "'" + den + "'", "zero denominator");
        value = Rational(value.get_num(), d);
        value.canonicalize();
        text += "/" + den;
      }
      return Token{Kind::number, start, text, value, 0};
    }
    throw ParseError(start, {"RATIONAL", "VAR", "(", ")", "+", "-", "*", "^"}, found_at(start),
                     "unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t dim) : tokens_(std::move(tokens)), dim_(dim) {}

  Polynomial parse() {
    Polynomial p = expr();
    if (peek().kind != Kind::end) {
      throw ParseError(peek().offset, {"+", "-", "*", "^", "end of input"}, describe(peek()),
                       peek().kind == Kind::rparen ? "unbalanced ')'" : "");
    }
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  Polynomial expr() {
    bool negate = false;
    if (peek().kind == Kind::minus) {
      take();
      negate = true;
    }
    Polynomial p = term();
    if (negate) p = -p;
    while (peek().kind == Kind::plus || peek().kind == Kind::minus) {
      const bool minus = take().kind == Kind::minus;
      Polynomial t = term();
      if (minus) p -= t;
      else p += t;
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = factor();
    while (peek().kind == Kind::star) {
      take();
      p = p * factor();
    }
    return p;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (peek().kind == Kind::caret) {
      take();
      const Token& t = peek();
      if (t.kind != Kind::number || t.text.find('/') != std::string::npos) {
        throw ParseError(t.offset, {"NAT"}, describe(t));
      }
      if (t.text.size() > 6 || t.number > kMaxExponent) {
        throw ParseError(t.offset, {}, describe(t),
                         "exponent exceeds " + std::to_string(kMaxExponent));
      }
      take();
      b = pow(b, static_cast<unsigned>(t.number.get_num().get_ui()));
    }
    return b;
  }

  Polynomial base() {
    const Token& t = peek();
    switch (t.kind) {
      case Kind::number:
        take();
        return Polynomial::constant(dim_, t.number);
      case Kind::variable:
        if (t.index >= dim_) {
          throw ParseError(t.offset, {}, describe(t),
                           "variable exceeds dimension " + std::to_string(dim_));
        }
        take();
        return Polynomial::variable(dim_, t.index);
      case Kind::lparen: {
        take();
        Polynomial inner = expr();
        if (peek().kind != Kind::rparen) {
          throw ParseError(peek().offset, {")", "+", "-", "*", "^"}, describe(peek()));
        }
        take();
        return inner;
      }
      default: {
        const bool at_start = pos_ == 0 || tokens_[pos_ - 1].kind == Kind::lparen;
        std::set<std::string> expected{"RATIONAL", "VAR", "("};
        if (at_start && t.kind != Kind::minus) expected.insert("-");
        throw ParseError(t.offset, expected, describe(t));
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(std::size_t offset, std::set<std::string> expected, std::string found,
                       std::string detail)
    : Error(build_message(offset, expected, found, detail)),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> dim) {
  std::vector<Token> tokens = Lexer(text).run();
  std::size_t needed = 1;
  for (const auto& t : tokens) {
    if (t.kind == Kind::variable) needed = std::max(needed, t.index + 1);
  }
  if (dim && *dim == 0) throw DomainError("dimension must be at least 1");
  return Parser(std::move(tokens), dim.value_or(needed)).parse();
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [alpha, c] = *it;
    const bool negative = sgn(c) < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational magnitude = abs(c);
    std::string monomial;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += "x" + std::to_string(i + 1);
      if (alpha[i] > 1) monomial += "^" + std::to_string(alpha[i]);
    }
    if (monomial.empty()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += monomial;
    } else {
      out += to_string(magnitude) + "*" + monomial;
    }
  }
  return out;
}

}  // namespace hconv
