#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "mfc/error.hpp"
#include "mfc/poly.hpp"

namespace mfc {

/// Recursive-descent parser for arithmetic expressions.
///
/// Grammar: sums of products of factors; factors are numbers, identifiers,
/// parenthesised expressions, unary minus, and integer powers. The value
/// semantics come from Policy, which supplies the Value type together with
/// number/identifier/add/sub/mul/div/neg/pow.
template <class Policy>
class ExpressionParser {
 public:
  using Value = typename Policy::Value;

  ExpressionParser(std::string_view text, Policy& policy, int line = 0, int column = 1)
      : text_(text), policy_(policy), line_(line), column_(column) {}

  Value parse() {
    Value v = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_ + static_cast<int>(pos_));
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

  Value sum() {
    Value v = product();
    for (;;) {
      if (accept('+')) v = policy_.add(v, product());
      else if (accept('-')) v = policy_.sub(v, product());
      else return v;
    }
  }

  Value product() {
    Value v = factor();
    for (;;) {
      if (accept('*')) v = policy_.mul(v, factor());
      else if (accept('/')) {
        std::size_t at = pos_;
        Value d = factor();
        try {
          v = policy_.div(v, d);
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          pos_ = at;
          fail(e.what());
        }
      } else return v;
    }
  }

  Value factor() {
    if (accept('-')) return policy_.neg(factor());
    if (accept('+')) return factor();
    Value v = atom();
    if (accept('^')) {
      bool negative = accept('-');
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      long e = std::stol(std::string(text_.substr(start, pos_ - start)));
      v = policy_.pow(v, negative ? -e : e);
    }
    return v;
  }

  Value atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = sum();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return policy_.number(mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      try {
        return policy_.identifier(name);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        pos_ = start;
        fail(e.what());
      }
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Policy& policy_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

/// Parse an element of Q(zeta_N); the identifier z denotes zeta_N.
Scalar parse_scalar(std::string_view text, const FieldPtr& field, int line = 0, int column = 1);
/// Parse a polynomial in the ring's variables; z denotes zeta_N.
Poly parse_poly(std::string_view text, const RingPtr& ring, int line = 0, int column = 1);
/// Parse "[[a, b], [c, d]]" into rows of scalars.
std::vector<std::vector<Scalar>> parse_scalar_matrix(std::string_view text, const FieldPtr& field, int line = 0,
                                                     int column = 1);
/// Split on a delimiter that is not nested inside brackets or parentheses.
std::vector<std::string> split_top_level(std::string_view text, char delimiter);
std::string trim(std::string_view text);

}  // namespace mfc
