#pragma once

// Recursive-descent parser for the operator DSL:
//
//   expr   := [ "+" | "-" ] term { ("+" | "-") term } ;
//   term   := [ scalar ] gen { gen } | scalar ;
//   gen    := ("b+" | "b-") "[" sector "," serial "]" ;
//   sector := "11" | "12" | "21" | "22" ;
//   serial := positive decimal integer ;
//   scalar := decimal [ "i" ] | "(" decimal "," decimal ")" ;
//
// Signs are allowed on the decimals inside "( , )". Serial upper bounds
// depend on a SectorConfig and are checked by bind().

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fermifold/errors.hpp"
#include "fermifold/expr.hpp"

namespace fermifold {

inline constexpr std::string_view kGrammar =
    "expr   := [ \"+\" | \"-\" ] term { (\"+\" | \"-\") term } ;\n"
    "term   := [ scalar ] gen { gen } | scalar ;\n"
    "gen    := (\"b+\" | \"b-\") \"[\" sector \",\" serial \"]\" ;\n"
    "sector := \"11\" | \"12\" | \"21\" | \"22\" ;\n"
    "serial := positive decimal integer ;\n"
    "scalar := decimal [ \"i\" ] | \"(\" decimal \",\" decimal \")\" ;\n";

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Parsed expression with the source position of every generator.
struct ParsedExpr {
  OperatorExpr expr;
  std::vector<std::vector<SourcePos>> positions;  // parallel to expr.terms()[i].gens
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedExpr run() {
    ParsedExpr out;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      advance();
    }
    parse_term(out, sign);
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-' between terms");
      sign = peek() == '-' ? -1 : 1;
      advance();
      parse_term(out, sign);
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col_); }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool at_generator() const { return peek() == 'b' && (peek(1) == '+' || peek(1) == '-'); }

  void parse_term(ParsedExpr& out, int sign) {
    skip_ws();
    Term<ExactScalar> term{ExactScalar{sign}, {}};
    std::vector<SourcePos> where;
    bool has_scalar = false;
    if (!at_generator()) {
      term.scalar = term.scalar * parse_scalar();
      has_scalar = true;
      skip_ws();
    }
    while (at_generator()) {
      where.push_back({line_, col_});
      term.gens.push_back(parse_generator());
      skip_ws();
    }
    if (!has_scalar && term.gens.empty()) fail("expected a scalar or a generator");
    if (!at_end() && peek() != '+' && peek() != '-') {
      if (std::isalpha(static_cast<unsigned char>(peek()))) fail("unknown token; generators are b+[s,r] or b-[s,r]");
      fail("unexpected character");
    }
    if (is_zero(term.scalar)) return;
    out.expr.add(std::move(term));
    out.positions.push_back(std::move(where));
  }

  Generator parse_generator() {
    advance();  // 'b'
    const Action kind = peek() == '+' ? Action::create : Action::annihilate;
    advance();
    expect('[');
    skip_ws();
    const int sec_line = line_;
    const int sec_col = col_;
    const std::int64_t code = parse_integer();
    if (code != 11 && code != 12 && code != 21 && code != 22) {
      throw SyntaxError("sector must be 11|12|21|22, got " + std::to_string(code), sec_line, sec_col);
    }
    expect(',');
    skip_ws();
    const int ser_line = line_;
    const int ser_col = col_;
    const std::int64_t serial = parse_integer();
    if (serial < 1 || serial > kMaxModesPerSector) {
      throw SyntaxError("serial must be a positive integer no larger than " +
                            std::to_string(kMaxModesPerSector),
                        ser_line, ser_col);
    }
    expect(']');
    return {kind, {sector_from_code(static_cast<int>(code)), static_cast<int>(serial)}};
  }

  std::int64_t parse_integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    std::int64_t v = 0;
    int digits = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (++digits > 18) fail("integer too long");
      v = v * 10 + (peek() - '0');
      advance();
    }
    return v;
  }

  Rational parse_decimal(bool allow_sign) {
    skip_ws();
    bool negative = false;
    if (allow_sign && (peek() == '+' || peek() == '-')) {
      negative = peek() == '-';
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a decimal number");
    std::int64_t num = 0;
    std::int64_t den = 1;
    int digits = 0;
    auto take = [&](bool fractional) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        if (++digits > 18) fail("decimal has more than 18 digits");
        num = num * 10 + (peek() - '0');
        if (fractional) den *= 10;
        advance();
      }
    };
    take(false);
    if (peek() == '.') {
      advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits after '.'");
      take(true);
    }
    Rational r(num, den);
    return negative ? -r : r;
  }

  ExactScalar parse_scalar() {
    if (peek() == '(') {
      advance();
      const Rational re = parse_decimal(true);
      expect(',');
      const Rational im = parse_decimal(true);
      expect(')');
      return {re, im};
    }
    const Rational v = parse_decimal(false);
    if (peek() == 'i') {
      advance();
      return {Rational{0}, v};
    }
    return {v, Rational{0}};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

inline ParsedExpr parse_with_positions(std::string_view text) { return detail::Parser(text).run(); }

inline OperatorExpr parse(std::string_view text) { return parse_with_positions(text).expr; }

/// Checks every serial against `cfg`; errors carry the generator's source position.
inline OperatorExpr bind(const ParsedExpr& parsed, const SectorConfig& cfg) {
  const auto& terms = parsed.expr.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms[i].gens.size(); ++j) {
      const auto& m = terms[i].gens[j].mode;
      if (m.serial > cfg.count(m.sector)) {
        const auto& p = parsed.positions[i][j];
        throw RangeError(std::to_string(p.line) + ":" + std::to_string(p.column) + ": mode " +
                         to_string(m) + " outside sector with " + std::to_string(cfg.count(m.sector)) +
                         " modes");
      }
    }
  }
  return parsed.expr;
}

inline OperatorExpr parse(std::string_view text, const SectorConfig& cfg) {
  return bind(parse_with_positions(text), cfg);
}

}  // namespace fermifold
