#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace rhumbforge {

/// Node kinds of a one-variable expression tree.
enum class ExprKind {
  Constant,
  Variable,  // y
  Neg,
  Sin,
  Cos,
  Tan,
  Exp,
  Ln,
  Sqrt,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
};

/// Immutable expression in the single variable `y`.
///
/// Nodes are shared; copying an Expr is cheap and never deep-copies. Trees
/// compare structurally with operator==.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double value);
  /// A constant printed by name (`pi`, `e`).
  static Expr named_constant(std::string name, double value);
  static Expr variable();
  static Expr unary(ExprKind kind, Expr arg);
  static Expr binary(ExprKind kind, Expr lhs, Expr rhs);

  ExprKind kind() const;
  double value() const;             // Constant only
  const std::string& name() const;  // empty unless a named constant
  const Expr& lhs() const;          // unary argument or binary left operand
  const Expr& rhs() const;          // binary right operand

  bool is_constant() const { return kind() == ExprKind::Constant; }
  /// True when the subtree does not reference `y`.
  bool is_y_free() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

bool is_unary(ExprKind kind);
bool is_binary(ExprKind kind);

/// Parses `src` using the grammar
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := ('-')? power
///     power  := atom ('^' factor)?
///     atom   := number | 'y' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///     func   := sin | cos | tan | exp | ln | sqrt
///
/// so `^` is right-associative and `-y^2` reads as -(y^2). Throws ParseError
/// (with the offending position) or UnknownIdentifier.
Expr parse_expression(std::string_view src);

/// d/dy by the chain, product, quotient and power rules. The result is not
/// simplified beyond dropping multiplications by 0 and 1.
Expr differentiate(const Expr& e);

/// Evaluates at `y`. Throws DomainError for ln/sqrt/tan/division/power
/// domain violations and EvaluationError when the result is not finite.
double evaluate(const Expr& e, double y);

/// Fully parenthesised text that parse_expression reads back to an equal tree.
std::string to_string(const Expr& e);

}  // namespace rhumbforge
