#include "certquad/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

namespace certquad {
namespace detail {

enum class NodeKind { constant, variable, neg, sin, cos, tan, exp, ln, sqrt, add, sub, mul, div, pow };

struct Node {
  NodeKind kind;
  double value = 0.0;  // for constant
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(double v) {
  return std::make_shared<Node>(Node{NodeKind::constant, v, nullptr, nullptr});
}

NodePtr make_unary(NodeKind k, NodePtr child) {
  return std::make_shared<Node>(Node{k, 0.0, std::move(child), nullptr});
}

NodePtr make_binary(NodeKind k, NodePtr lhs, NodePtr rhs) {
  return std::make_shared<Node>(Node{k, 0.0, std::move(lhs), std::move(rhs)});
}

namespace {

struct Token {
  enum class Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
  Kind kind;
  std::size_t offset;
  double number = 0.0;
  std::string ident;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_.offset = pos_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::Kind::end;
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '+': current_.kind = Token::Kind::plus; ++pos_; return;
      case '-': current_.kind = Token::Kind::minus; ++pos_; return;
      case '*': current_.kind = Token::Kind::star; ++pos_; return;
      case '/': current_.kind = Token::Kind::slash; ++pos_; return;
      case '^': current_.kind = Token::Kind::caret; ++pos_; return;
      case '(': current_.kind = Token::Kind::lparen; ++pos_; return;
      case ')': current_.kind = Token::Kind::rparen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      current_.kind = Token::Kind::ident;
      current_.ident = std::string(text_.substr(start, pos_ - start));
      return;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  void lex_number() {
    const std::size_t start = pos_;
    bool saw_digit = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      saw_digit = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        saw_digit = true;
      }
    }
    if (!saw_digit) throw ParseError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' was not an exponent; leave it for the lexer
      }
    }
    const std::string num(text_.substr(start, pos_ - start));
    current_.kind = Token::Kind::number;
    current_.number = std::strtod(num.c_str(), nullptr);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    const Token& t = lexer_.peek();
    if (t.kind != Token::Kind::end) throw ParseError(t.offset, "unexpected trailing input");
    return e;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > 2000) {
        throw ParseError(parser.lexer_.peek().offset, "expression nests too deeply");
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      const Token& t = lexer_.peek();
      if (t.kind == Token::Kind::plus) {
        lexer_.take();
        lhs = make_binary(NodeKind::add, lhs, parse_term());
      } else if (t.kind == Token::Kind::minus) {
        lexer_.take();
        lhs = make_binary(NodeKind::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      const Token& t = lexer_.peek();
      if (t.kind == Token::Kind::star) {
        lexer_.take();
        lhs = make_binary(NodeKind::mul, lhs, parse_unary());
      } else if (t.kind == Token::Kind::slash) {
        lexer_.take();
        lhs = make_binary(NodeKind::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    DepthGuard guard(*this);
    const Token& t = lexer_.peek();
    if (t.kind == Token::Kind::minus) {
      lexer_.take();
      return make_unary(NodeKind::neg, parse_unary());
    }
    if (t.kind == Token::Kind::plus) {
      lexer_.take();
      return parse_unary();
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (lexer_.peek().kind == Token::Kind::caret) {
      lexer_.take();
      const std::size_t exp_offset = lexer_.peek().offset;
      NodePtr exponent = parse_unary();
      const std::optional<double> folded = fold_constant(exponent);
      if (!folded) throw ParseError(exp_offset, "exponent must be a constant expression");
      return make_binary(NodeKind::pow, base, make_const(*folded));
    }
    return base;
  }

  NodePtr parse_atom() {
    Token t = lexer_.take();
    switch (t.kind) {
      case Token::Kind::number:
        return make_const(t.number);
      case Token::Kind::lparen: {
        NodePtr inner = parse_expr();
        expect_rparen(t.offset);
        return inner;
      }
      case Token::Kind::ident:
        return parse_ident(std::move(t));
      default:
        throw ParseError(t.offset, "expected number, 'x', 'pi', 'e', function call or '('");
    }
  }

  NodePtr parse_ident(Token t) {
    if (t.ident == "x") return std::make_shared<Node>(Node{NodeKind::variable, 0.0, nullptr, nullptr});
    if (t.ident == "pi") return make_const(M_PI);
    if (t.ident == "e") return make_const(M_E);
    NodeKind kind;
    if (t.ident == "sin") kind = NodeKind::sin;
    else if (t.ident == "cos") kind = NodeKind::cos;
    else if (t.ident == "tan") kind = NodeKind::tan;
    else if (t.ident == "exp") kind = NodeKind::exp;
    else if (t.ident == "ln" || t.ident == "log") kind = NodeKind::ln;
    else if (t.ident == "sqrt") kind = NodeKind::sqrt;
    else throw ParseError(t.offset, "unknown identifier '" + t.ident + "'");
    const Token open = lexer_.take();
    if (open.kind != Token::Kind::lparen) {
      throw ParseError(open.offset, "expected '(' after function name '" + t.ident + "'");
    }
    NodePtr arg = parse_expr();
    expect_rparen(open.offset);
    return make_unary(kind, std::move(arg));
  }

  void expect_rparen(std::size_t open_offset) {
    const Token close = lexer_.take();
    if (close.kind != Token::Kind::rparen) {
      throw ParseError(close.offset,
                       "expected ')' to close '(' at offset " + std::to_string(open_offset));
    }
  }

  static std::optional<double> fold_constant(const NodePtr& n) {
    switch (n->kind) {
      case NodeKind::constant: return n->value;
      case NodeKind::variable: return std::nullopt;
      default: break;
    }
    const std::optional<double> a = n->lhs ? fold_constant(n->lhs) : std::nullopt;
    if (!a) return std::nullopt;
    switch (n->kind) {
      case NodeKind::neg: return -*a;
      case NodeKind::sin: return std::sin(*a);
      case NodeKind::cos: return std::cos(*a);
      case NodeKind::tan: return std::tan(*a);
      case NodeKind::exp: return std::exp(*a);
      case NodeKind::ln: return *a > 0.0 ? std::optional<double>(std::log(*a)) : std::nullopt;
      case NodeKind::sqrt: return *a >= 0.0 ? std::optional<double>(std::sqrt(*a)) : std::nullopt;
      default: break;
    }
    const std::optional<double> b = n->rhs ? fold_constant(n->rhs) : std::nullopt;
    if (!b) return std::nullopt;
    switch (n->kind) {
      case NodeKind::add: return *a + *b;
      case NodeKind::sub: return *a - *b;
      case NodeKind::mul: return *a * *b;
      case NodeKind::div: return *b != 0.0 ? std::optional<double>(*a / *b) : std::nullopt;
      case NodeKind::pow: return std::pow(*a, *b);
      default: return std::nullopt;
    }
  }

  Lexer lexer_;
  int depth_ = 0;
};

bool is_integral_exponent(double c, long long& out) {
  if (std::abs(c) > 1e9) return false;
  const double r = std::nearbyint(c);
  if (r != c) return false;
  out = static_cast<long long>(r);
  return true;
}

Jet3 eval_node(const Node& n, double x) {
  switch (n.kind) {
    case NodeKind::constant: return Jet3::constant(n.value);
    case NodeKind::variable: return Jet3::variable(x);
    case NodeKind::neg: return -eval_node(*n.lhs, x);
    case NodeKind::sin: return jet_sin(eval_node(*n.lhs, x));
    case NodeKind::cos: return jet_cos(eval_node(*n.lhs, x));
    case NodeKind::tan: return jet_tan(eval_node(*n.lhs, x));
    case NodeKind::exp: return jet_exp(eval_node(*n.lhs, x));
    case NodeKind::ln: return jet_log(eval_node(*n.lhs, x));
    case NodeKind::sqrt: return jet_sqrt(eval_node(*n.lhs, x));
    case NodeKind::add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case NodeKind::sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case NodeKind::mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case NodeKind::div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
    case NodeKind::pow: {
      const Jet3 base = eval_node(*n.lhs, x);
      const double c = n.rhs->value;
      long long k = 0;
      if (is_integral_exponent(c, k)) return jet_pow_int(base, k);
      return jet_pow_real(base, c);
    }
  }
  throw std::logic_error("unreachable node kind");
}

double eval_value(const Node& n, double x) {
  switch (n.kind) {
    case NodeKind::constant: return n.value;
    case NodeKind::variable: return x;
    case NodeKind::neg: return -eval_value(*n.lhs, x);
    case NodeKind::sin: return std::sin(eval_value(*n.lhs, x));
    case NodeKind::cos: return std::cos(eval_value(*n.lhs, x));
    case NodeKind::tan: {
      const double u = eval_value(*n.lhs, x);
      const double c = std::cos(u);
      if (c == 0.0) throw EvalDomainError("tan", "pole at odd multiple of pi/2");
      return std::sin(u) / c;
    }
    case NodeKind::exp: return std::exp(eval_value(*n.lhs, x));
    case NodeKind::ln: {
      const double u = eval_value(*n.lhs, x);
      if (!(u > 0.0)) throw EvalDomainError("ln", "argument " + std::to_string(u) + " not positive");
      return std::log(u);
    }
    case NodeKind::sqrt: {
      const double u = eval_value(*n.lhs, x);
      if (u < 0.0) throw EvalDomainError("sqrt", "argument " + std::to_string(u) + " negative");
      return std::sqrt(u);
    }
    case NodeKind::add: return eval_value(*n.lhs, x) + eval_value(*n.rhs, x);
    case NodeKind::sub: return eval_value(*n.lhs, x) - eval_value(*n.rhs, x);
    case NodeKind::mul: return eval_value(*n.lhs, x) * eval_value(*n.rhs, x);
    case NodeKind::div: {
      const double den = eval_value(*n.rhs, x);
      if (den == 0.0) throw EvalDomainError("div", "division by zero");
      return eval_value(*n.lhs, x) / den;
    }
    case NodeKind::pow: {
      const double base = eval_value(*n.lhs, x);
      const double c = n.rhs->value;
      long long k = 0;
      if (is_integral_exponent(c, k)) {
        if (k < 0 && base == 0.0) throw EvalDomainError("pow", "zero base, negative exponent");
        return std::pow(base, static_cast<double>(k));
      }
      if (!(base > 0.0)) {
        throw EvalDomainError("pow", "base " + std::to_string(base) +
                                         " not positive for non-integer exponent");
      }
      return std::pow(base, c);
    }
  }
  throw std::logic_error("unreachable node kind");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::neg: return 3;
    case NodeKind::pow: return 4;
    default: return 5;
  }
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int parent_prec, bool force_parens, std::string& out) {
  const bool parens = force_parens || precedence(child.kind) < parent_prec ||
                      (child.kind == NodeKind::constant && child.value < 0.0);
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::constant: out += format_double(n.value); return;
    case NodeKind::variable: out += 'x'; return;
    case NodeKind::neg:
      out += '-';
      print_child(*n.lhs, precedence(NodeKind::neg), false, out);
      return;
    case NodeKind::sin: out += "sin("; print_node(*n.lhs, out); out += ')'; return;
    case NodeKind::cos: out += "cos("; print_node(*n.lhs, out); out += ')'; return;
    case NodeKind::tan: out += "tan("; print_node(*n.lhs, out); out += ')'; return;
    case NodeKind::exp: out += "exp("; print_node(*n.lhs, out); out += ')'; return;
    case NodeKind::ln: out += "ln("; print_node(*n.lhs, out); out += ')'; return;
    case NodeKind::sqrt: out += "sqrt("; print_node(*n.lhs, out); out += ')'; return;
    case NodeKind::add:
      print_child(*n.lhs, 1, false, out);
      out += '+';
      print_child(*n.rhs, 2, false, out);
      return;
    case NodeKind::sub:
      print_child(*n.lhs, 1, false, out);
      out += '-';
      print_child(*n.rhs, 2, false, out);
      return;
    case NodeKind::mul:
      print_child(*n.lhs, 2, false, out);
      out += '*';
      print_child(*n.rhs, 2, false, out);
      return;
    case NodeKind::div:
      print_child(*n.lhs, 2, false, out);
      out += '/';
      print_child(*n.rhs, 3, false, out);
      return;
    case NodeKind::pow:
      print_child(*n.lhs, 5, n.lhs->kind != NodeKind::constant && n.lhs->kind != NodeKind::variable, out);
      out += '^';
      print_child(*n.rhs, 5, false, out);
      return;
  }
}

}  // namespace
}  // namespace detail

Expr parse(std::string_view text) {
  detail::Parser parser(text);
  return Expr(parser.parse_all());
}

Jet3 Expr::eval_jet(double x) const { return detail::eval_node(*root_, x); }

double Expr::eval(double x) const { return detail::eval_value(*root_, x); }

std::string Expr::to_string() const {
  std::string out;
  detail::print_node(*root_, out);
  return out;
}

}  // namespace certquad
