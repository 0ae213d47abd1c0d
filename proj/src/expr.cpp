#include "rhumbforge/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "rhumbforge/errors.hpp"

namespace rhumbforge {

struct Expr::Node {
  ExprKind kind = ExprKind::Constant;
  double value = 0.0;
  std::string name;
  Expr lhs;
  Expr rhs;
  bool y_free = true;
};

Expr::Expr() : node_(nullptr) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::named_constant(std::string name, double value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Constant;
  n->value = value;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Variable;
  n->y_free = false;
  return Expr(std::move(n));
}

Expr Expr::unary(ExprKind kind, Expr arg) {
  if (!is_unary(kind)) throw std::invalid_argument("Expr::unary: not a unary kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->y_free = arg.is_y_free();
  n->lhs = std::move(arg);
  return Expr(std::move(n));
}

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs) {
  if (!is_binary(kind)) throw std::invalid_argument("Expr::binary: not a binary kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->y_free = lhs.is_y_free() && rhs.is_y_free();
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

// A default-constructed Expr is the constant 0 without allocating.
ExprKind Expr::kind() const { return node_ ? node_->kind : ExprKind::Constant; }
double Expr::value() const { return node_ ? node_->value : 0.0; }
const std::string& Expr::name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}
const Expr& Expr::lhs() const { return node_->lhs; }
const Expr& Expr::rhs() const { return node_->rhs; }
bool Expr::is_y_free() const { return node_ ? node_->y_free : true; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Constant:
      return a.value() == b.value() && a.name() == b.name();
    case ExprKind::Variable:
      return true;
    default:
      break;
  }
  if (is_unary(a.kind())) return a.lhs() == b.lhs();
  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

bool is_unary(ExprKind kind) {
  switch (kind) {
    case ExprKind::Neg:
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Tan:
    case ExprKind::Exp:
    case ExprKind::Ln:
    case ExprKind::Sqrt:
      return true;
    default:
      return false;
  }
}

bool is_binary(ExprKind kind) {
  switch (kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Pow:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct FunctionName {
  std::string_view name;
  ExprKind kind;
};

constexpr FunctionName kFunctions[] = {
    {"sin", ExprKind::Sin}, {"cos", ExprKind::Cos}, {"tan", ExprKind::Tan},
    {"exp", ExprKind::Exp}, {"ln", ExprKind::Ln},   {"sqrt", ExprKind::Sqrt},
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    skip_space();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr();
    skip_space();
    if (pos_ != src_.size()) {
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) {
        throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      }
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(ExprKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(ExprKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(ExprKind::Mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = Expr::binary(ExprKind::Div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  // A minus directly in front of a bare numeric literal yields a negative
  // constant, so printed trees re-parse to themselves.
  Expr parse_factor() {
    if (!accept('-')) return parse_power();
    skip_space();
    const bool literal = pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                                src_[pos_] == '.');
    Expr arg = parse_power();
    if (literal && arg.is_constant()) return Expr::constant(-arg.value());
    return Expr::unary(ExprKind::Neg, arg);
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return Expr::binary(ExprKind::Pow, base, parse_factor());
    return base;
  }

  Expr parse_atom() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    // An exponent is only consumed when digits follow; otherwise `e` is left
    // for the identifier rule (and then rejected, there is no implicit '*').
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto text = src_.substr(start, pos_ - start);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw ParseError("malformed number", start);
    }
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const auto id = src_.substr(start, pos_ - start);
    if (id == "y") return Expr::variable();
    if (id == "pi") return Expr::named_constant("pi", std::numbers::pi);
    if (id == "e") return Expr::named_constant("e", std::numbers::e);
    for (const auto& fn : kFunctions) {
      if (id == fn.name) {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        return Expr::unary(fn.kind, arg);
      }
    }
    throw UnknownIdentifier(std::string(id), start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view src) { return Parser(src).parse(); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

bool is_value(const Expr& e, double v) { return e.is_constant() && e.value() == v; }

Expr add(Expr a, Expr b) {
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  return Expr::binary(ExprKind::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return Expr::unary(ExprKind::Neg, std::move(b));
  return Expr::binary(ExprKind::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  if (is_value(a, 0.0) || is_value(b, 0.0)) return Expr::constant(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  return Expr::binary(ExprKind::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  if (is_value(a, 0.0)) return Expr::constant(0.0);
  if (is_value(b, 1.0)) return a;
  return Expr::binary(ExprKind::Div, std::move(a), std::move(b));
}

Expr neg(Expr a) {
  if (is_value(a, 0.0)) return a;
  return Expr::unary(ExprKind::Neg, std::move(a));
}

Expr fn(ExprKind kind, Expr a) { return Expr::unary(kind, std::move(a)); }

Expr pow(Expr a, Expr b) { return Expr::binary(ExprKind::Pow, std::move(a), std::move(b)); }

}  // namespace

Expr differentiate(const Expr& e) {
  const ExprKind k = e.kind();
  if (k == ExprKind::Constant) return Expr::constant(0.0);
  if (k == ExprKind::Variable) return Expr::constant(1.0);
  if (e.is_y_free()) return Expr::constant(0.0);

  if (is_unary(k)) {
    const Expr& u = e.lhs();
    const Expr du = differentiate(u);
    switch (k) {
      case ExprKind::Neg:
        return neg(du);
      case ExprKind::Sin:
        return mul(fn(ExprKind::Cos, u), du);
      case ExprKind::Cos:
        return neg(mul(fn(ExprKind::Sin, u), du));
      case ExprKind::Tan:
        return div(du, pow(fn(ExprKind::Cos, u), Expr::constant(2.0)));
      case ExprKind::Exp:
        return mul(e, du);
      case ExprKind::Ln:
        return div(du, u);
      case ExprKind::Sqrt:
        return div(du, mul(Expr::constant(2.0), e));
      default:
        break;
    }
  }

  const Expr& u = e.lhs();
  const Expr& v = e.rhs();
  const Expr du = differentiate(u);
  const Expr dv = differentiate(v);
  switch (k) {
    case ExprKind::Add:
      return add(du, dv);
    case ExprKind::Sub:
      return sub(du, dv);
    case ExprKind::Mul:
      return add(mul(du, v), mul(u, dv));
    case ExprKind::Div:
      return div(sub(mul(du, v), mul(u, dv)), pow(v, Expr::constant(2.0)));
    case ExprKind::Pow:
      if (v.is_y_free()) {
        // c * u^(c-1) * u'
        return mul(mul(v, pow(u, sub(v, Expr::constant(1.0)))), du);
      }
      if (u.is_y_free()) {
        // a^v = exp(v ln a): a^v ln(a) v'
        return mul(mul(e, fn(ExprKind::Ln, u)), dv);
      }
      // u^v = exp(v ln u): u^v (v' ln u + v u'/u)
      return mul(e, add(mul(dv, fn(ExprKind::Ln, u)), div(mul(v, du), u)));
    default:
      break;
  }
  throw std::logic_error("differentiate: unhandled node kind");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double r, const char* op) {
  if (!std::isfinite(r)) {
    throw EvaluationError(std::string("non-finite result from ") + op);
  }
  return r;
}

double eval_node(const Expr& e, double y) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.value();
    case ExprKind::Variable:
      return y;
    case ExprKind::Neg:
      return -eval_node(e.lhs(), y);
    case ExprKind::Sin:
      return std::sin(eval_node(e.lhs(), y));
    case ExprKind::Cos:
      return std::cos(eval_node(e.lhs(), y));
    case ExprKind::Tan: {
      const double a = eval_node(e.lhs(), y);
      if (std::abs(std::cos(a)) < 1e-15) throw DomainError("tan evaluated at a pole");
      return std::tan(a);
    }
    case ExprKind::Exp:
      return checked(std::exp(eval_node(e.lhs(), y)), "exp");
    case ExprKind::Ln: {
      const double a = eval_node(e.lhs(), y);
      if (!(a > 0.0)) throw DomainError("ln of a non-positive argument");
      return std::log(a);
    }
    case ExprKind::Sqrt: {
      const double a = eval_node(e.lhs(), y);
      if (!(a >= 0.0)) throw DomainError("sqrt of a negative argument");
      return std::sqrt(a);
    }
    case ExprKind::Add:
      return checked(eval_node(e.lhs(), y) + eval_node(e.rhs(), y), "+");
    case ExprKind::Sub:
      return checked(eval_node(e.lhs(), y) - eval_node(e.rhs(), y), "-");
    case ExprKind::Mul:
      return checked(eval_node(e.lhs(), y) * eval_node(e.rhs(), y), "*");
    case ExprKind::Div: {
      const double num = eval_node(e.lhs(), y);
      const double den = eval_node(e.rhs(), y);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(num / den, "/");
    }
    case ExprKind::Pow: {
      const double base = eval_node(e.lhs(), y);
      const double ex = eval_node(e.rhs(), y);
      if (base < 0.0 && ex != std::floor(ex)) {
        throw DomainError("negative base raised to a non-integer power");
      }
      if (base == 0.0 && ex < 0.0) throw DomainError("zero raised to a negative power");
      return checked(std::pow(base, ex), "^");
    }
  }
  throw std::logic_error("evaluate: unhandled node kind");
}

}  // namespace

double evaluate(const Expr& e, double y) {
  const double r = eval_node(e, y);
  if (!std::isfinite(r)) throw EvaluationError("expression evaluated to a non-finite value");
  return r;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* function_name(ExprKind k) {
  for (const auto& f : kFunctions) {
    if (f.kind == k) return f.name.data();
  }
  return nullptr;
}

char operator_symbol(ExprKind k) {
  switch (k) {
    case ExprKind::Add: return '+';
    case ExprKind::Sub: return '-';
    case ExprKind::Mul: return '*';
    case ExprKind::Div: return '/';
    case ExprKind::Pow: return '^';
    default: return '?';
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Constant: {
      if (!e.name().empty()) {
        out += e.name();
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(e.value()));
      if (std::signbit(e.value())) {
        out += "(-";
        out += buf;
        out += ')';
      } else {
        out += buf;
      }
      return;
    }
    case ExprKind::Variable:
      out += 'y';
      return;
    case ExprKind::Neg:
      out += "(-";
      if (e.lhs().is_constant() && e.lhs().name().empty()) {
        out += '(';
        print(e.lhs(), out);
        out += ')';
      } else {
        print(e.lhs(), out);
      }
      out += ')';
      return;
    default:
      break;
  }
  if (is_unary(e.kind())) {
    out += function_name(e.kind());
    out += '(';
    print(e.lhs(), out);
    out += ')';
    return;
  }
  out += '(';
  print(e.lhs(), out);
  out += operator_symbol(e.kind());
  print(e.rhs(), out);
  out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace rhumbforge
