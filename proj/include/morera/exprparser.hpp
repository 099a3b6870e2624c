#pragma once

// Expressions in z and conj(z) for supplying test functions as text.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative, binds tighter than unary minus
//   primary := number ['i'] | 'i' | 'z' | 'zbar' | func '(' expr ')' | '(' expr ')'
//   func    := conj | abs | re | im | exp | sin | cos | log | sqrt

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>

#include "morera/complex.hpp"
#include "morera/error.hpp"

namespace morera::expr {

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : Error(ErrorKind::Parse, "parse error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class EvalError : public Error {
 public:
  EvalError(Complex z, const std::string& what)
      : Error(ErrorKind::Eval, what + " at z = " + format_complex(z)), z_(z) {}
  Complex z() const noexcept { return z_; }

 private:
  Complex z_;
};

enum class Func { Conj, Abs, Re, Im, Exp, Sin, Cos, Log, Sqrt };
enum class BinOp { Add, Sub, Mul, Div, Pow };

inline constexpr std::array<std::pair<std::string_view, Func>, 9> kFuncNames{{
    {"conj", Func::Conj}, {"abs", Func::Abs}, {"re", Func::Re}, {"im", Func::Im}, {"exp", Func::Exp},
    {"sin", Func::Sin}, {"cos", Func::Cos}, {"log", Func::Log}, {"sqrt", Func::Sqrt},
}};

inline std::string_view name_of(Func f) {
  for (const auto& [name, fn] : kFuncNames)
    if (fn == f) return name;
  return "?";
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Literal {
  double value;
  bool imaginary;
};
struct Var {
  bool conjugated;  // zbar
};
struct Neg {
  NodePtr operand;
};
struct Binary {
  BinOp op;
  NodePtr lhs, rhs;
};
struct Call {
  Func func;
  NodePtr arg;
};

struct Node {
  std::variant<Literal, Var, Neg, Binary, Call> v;
};

/// Immutable expression tree; cheap to copy and safe to share across threads.
class Expr {
 public:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}
  const Node& root() const { return *root_; }
  const NodePtr& ptr() const { return root_; }

 private:
  NodePtr root_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline bool nodes_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, Literal>) return x.value == y.value && x.imaginary == y.imaginary;
        else if constexpr (std::is_same_v<T, Var>) return x.conjugated == y.conjugated;
        else if constexpr (std::is_same_v<T, Neg>) return nodes_equal(*x.operand, *y.operand);
        else if constexpr (std::is_same_v<T, Binary>)
          return x.op == y.op && nodes_equal(*x.lhs, *y.lhs) && nodes_equal(*x.rhs, *y.rhs);
        else return x.func == y.func && nodes_equal(*x.arg, *y.arg);
      },
      a.v);
}

inline NodePtr make(auto&& alt) { return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)}); }

inline bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view src) : s_(src) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(pos_, "operator or end of input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) lhs = make(Binary{BinOp::Add, lhs, parse_term()});
      else if (accept('-')) lhs = make(Binary{BinOp::Sub, lhs, parse_term()});
      else return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) lhs = make(Binary{BinOp::Mul, lhs, parse_unary()});
      else if (accept('/')) lhs = make(Binary{BinOp::Div, lhs, parse_unary()});
      else return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Neg{parse_unary()});
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Binary{BinOp::Pow, base, parse_unary()});
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "operand");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      if (!accept(')')) throw ParseError(pos_, "')'");
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return parse_identifier();
    throw ParseError(pos_, "operand");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    }
    if (pos_ == start + 1 && s_[start] == '.') throw ParseError(start, "digit");
    // exponent only when followed by digits, so "2e" is not swallowed
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && s_[p] >= '0' && s_[p] <= '9') {
        while (p < s_.size() && s_[p] >= '0' && s_[p] <= '9') ++p;
        pos_ = p;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
    if (ec != std::errc() || ptr != s_.data() + pos_) throw ParseError(start, "number");
    bool imaginary = false;
    if (pos_ < s_.size() && s_[pos_] == 'i' && !(pos_ + 1 < s_.size() && ident_char(s_[pos_ + 1]))) {
      imaginary = true;
      ++pos_;
    }
    if (pos_ < s_.size() && ident_char(s_[pos_])) throw ParseError(pos_, "operator after number");
    return make(Literal{value, imaginary});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "z") return make(Var{false});
    if (id == "zbar") return make(Var{true});
    if (id == "i") return make(Literal{1.0, true});
    for (const auto& [name, fn] : kFuncNames) {
      if (id == name) {
        if (!accept('(')) throw ParseError(pos_, "'(' after function name");
        NodePtr arg = parse_expr();
        if (!accept(')')) throw ParseError(pos_, "')'");
        return make(Call{fn, arg});
      }
    }
    throw ParseError(start, "variable z, zbar, i or a known function");
  }
};

inline void print_node(const Node& n, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Literal>) {
          char buf[64];
          const auto res = std::to_chars(buf, buf + sizeof buf, x.value);
          out.append(buf, res.ptr);
          if (x.imaginary) out += 'i';
        } else if constexpr (std::is_same_v<T, Var>) {
          out += x.conjugated ? "zbar" : "z";
        } else if constexpr (std::is_same_v<T, Neg>) {
          out += "(-";
          print_node(*x.operand, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Binary>) {
          static constexpr char ops[] = {'+', '-', '*', '/', '^'};
          out += '(';
          print_node(*x.lhs, out);
          out += ' ';
          out += ops[static_cast<int>(x.op)];
          out += ' ';
          print_node(*x.rhs, out);
          out += ')';
        } else {
          out += name_of(x.func);
          out += '(';
          print_node(*x.arg, out);
          out += ')';
        }
      },
      n.v);
}

inline bool is_integer_valued(Complex e) {
  return e.imag() == 0.0 && std::isfinite(e.real()) && std::trunc(e.real()) == e.real() &&
         std::abs(e.real()) < 1e9;
}

inline Complex int_pow(Complex base, long n, Complex z) {
  if (n < 0) {
    if (base == Complex{}) throw EvalError(z, "division by zero in negative power");
    return 1.0 / int_pow(base, -n, z);
  }
  Complex result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

inline Complex eval_node(const Node& n, Complex z) {
  return std::visit(
      [&](const auto& x) -> Complex {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return x.imaginary ? Complex(0.0, x.value) : Complex(x.value, 0.0);
        } else if constexpr (std::is_same_v<T, Var>) {
          return x.conjugated ? std::conj(z) : z;
        } else if constexpr (std::is_same_v<T, Neg>) {
          return -eval_node(*x.operand, z);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const Complex a = eval_node(*x.lhs, z);
          const Complex b = eval_node(*x.rhs, z);
          switch (x.op) {
            case BinOp::Add: return a + b;
            case BinOp::Sub: return a - b;
            case BinOp::Mul: return a * b;
            case BinOp::Div:
              if (b == Complex{}) throw EvalError(z, "division by zero");
              return a / b;
            case BinOp::Pow:
              if (is_integer_valued(b)) return int_pow(a, static_cast<long>(b.real()), z);
              if (a == Complex{}) {
                if (b.real() > 0.0) return Complex{};
                throw EvalError(z, "zero raised to a non-positive power");
              }
              return std::pow(a, b);
          }
          return Complex{};
        } else {
          const Complex a = eval_node(*x.arg, z);
          switch (x.func) {
            case Func::Conj: return std::conj(a);
            case Func::Abs: return std::abs(a);
            case Func::Re: return a.real();
            case Func::Im: return a.imag();
            case Func::Exp: return std::exp(a);
            case Func::Sin: return std::sin(a);
            case Func::Cos: return std::cos(a);
            case Func::Log:
              if (a == Complex{}) throw EvalError(z, "log of zero");
              return std::log(a);
            case Func::Sqrt: return std::sqrt(a);
          }
          return Complex{};
        }
      },
      n.v);
}

inline bool is_constant(const Node& n) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Literal>) return true;
        else if constexpr (std::is_same_v<T, Var>) return false;
        else if constexpr (std::is_same_v<T, Neg>) return is_constant(*x.operand);
        else if constexpr (std::is_same_v<T, Binary>) return is_constant(*x.lhs) && is_constant(*x.rhs);
        else return is_constant(*x.arg);
      },
      n.v);
}

inline bool has_branch_power(const Node& n) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Literal> || std::is_same_v<T, Var>) return false;
        else if constexpr (std::is_same_v<T, Neg>) return has_branch_power(*x.operand);
        else if constexpr (std::is_same_v<T, Binary>) {
          if (has_branch_power(*x.lhs) || has_branch_power(*x.rhs)) return true;
          if (x.op != BinOp::Pow) return false;
          if (!is_constant(*x.rhs)) return true;
          try {
            return !is_integer_valued(eval_node(*x.rhs, Complex{}));
          } catch (const EvalError&) {
            return true;
          }
        } else return has_branch_power(*x.arg);
      },
      n.v);
}

}  // namespace detail

inline Expr parse(std::string_view source) { return Expr(detail::Parser(source).parse_all()); }

/// Canonical, fully parenthesized text; parse(print(e)) == e.
inline std::string print(const Expr& e) {
  std::string out;
  detail::print_node(e.root(), out);
  return out;
}

inline Complex eval(const Expr& e, Complex z) { return detail::eval_node(e.root(), z); }

/// True when some '^' may take a non-integer exponent and hence a branch cut.
inline bool has_branch_power(const Expr& e) { return detail::has_branch_power(e.root()); }

inline bool operator==(const Expr& a, const Expr& b) { return detail::nodes_equal(a.root(), b.root()); }

/// Evaluates a constant expression such as "0.5i" or "-1".
inline Complex parse_constant(std::string_view source) {
  const Expr e = parse(source);
  if (!detail::is_constant(e.root())) throw Error(ErrorKind::Parse, "expected a constant, got an expression in z");
  return eval(e, Complex{});
}

/// Callable wrapper so an expression can be handed to the numerical layer.
class ExprFunction {
 public:
  explicit ExprFunction(Expr e) : e_(std::move(e)) {}
  Complex operator()(Complex z) const { return eval(e_, z); }
  const Expr& expr() const { return e_; }

 private:
  Expr e_;
};

}  // namespace morera::expr
