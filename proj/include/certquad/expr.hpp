#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "certquad/jet.hpp"

namespace certquad {

/// Syntax error with the byte offset of the offending token and a
/// description of what would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset),
        message_(message) {}
  std::size_t offset() const { return offset_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

namespace detail {
struct Node;
}

/// Immutable syntax tree for a function of one variable `x`.
///
/// Grammar (infix, `^` > unary `-` > `*` `/` > `+` `-`):
///   expr   := term  (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('-'|'+') unary | power
///   power  := atom ('^' unary)?
///   atom   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | tan | exp | ln | sqrt
/// Exponents must be constant expressions (no `x`); they are folded at
/// parse time.
class Expr {
 public:
  /// Value together with first three derivatives, exact to rounding.
  Jet3 eval_jet(double x) const;
  /// Value only (cheaper than eval_jet when derivatives are not needed).
  double eval(double x) const;
  /// Render back to parseable text. Reparsing yields an equivalent function.
  std::string to_string() const;

  friend Expr parse(std::string_view text);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const detail::Node> root_;
};

/// Parse `text` into a syntax tree. Throws ParseError on malformed input.
Expr parse(std::string_view text);

}  // namespace certquad
