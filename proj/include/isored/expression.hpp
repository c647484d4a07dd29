#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "isored/error.hpp"
#include "isored/rational_function.hpp"

namespace isored {

/// Malformed weight expression. offset() is a byte offset into the input.
class ExpressionError : public Error {
 public:
  ExpressionError(std::string_view text, std::size_t offset, const std::string& what)
      : Error(ErrorKind::ParseError, what + " at offset " + std::to_string(offset) + " in \"" + std::string(text) +
                                         "\" near \"" + std::string(text.substr(std::min(offset, text.size()))) + "\""),
        offset_(offset),
        fragment_(text.substr(std::min(offset, text.size()))) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& fragment() const noexcept { return fragment_; }

 private:
  std::size_t offset_;
  std::string fragment_;
};

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := ('+' | '-') unary | power
// power  := atom ('^' integer)?
// atom   := integer | 'l' | '(' expr ')'
class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  RationalFunction parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    RationalFunction value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ExpressionError(text_, pos_, what); }

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

  RationalFunction expr() {
    RationalFunction value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  RationalFunction term() {
    RationalFunction value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RationalFunction divisor = unary();
        if (divisor.is_zero()) throw ExpressionError(text_, at, "division by zero");
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (!accept('^')) return base;
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 4 || std::stoul(digits) > kMaxDegree) {
      pos_ = start;
      fail("exponent too large");
    }
    return base.pow(static_cast<unsigned>(std::stoul(digits)));
  }

  RationalFunction atom() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      RationalFunction inner = expr();
      if (!accept(')')) {
        skip_space();
        if (pos_ == text_.size()) throw ExpressionError(text_, open, "unbalanced parenthesis");
        fail("expected ')'");
      }
      return inner;
    }
    if (c == 'l') {
      ++pos_;
      return RationalFunction::lambda();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
        fail("floating-point literals are not allowed");
      }
      return RationalFunction(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (c == '.') fail("floating-point literals are not allowed");
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a weight expression over integers, fractions, the symbol `l`
/// (the spectral parameter) and `+ - * / ^`, e.g. "(2*l + 1)/(l - 3)".
inline RationalFunction parse_weight(std::string_view text) { return detail::ExpressionParser(text).parse(); }

}  // namespace isored
