#include "qcst/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "qcst/error.hpp"

namespace qcst {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Number: return "number";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Caret: return "'^'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
  }
  return "?";
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

[[noreturn]] void unexpected_char(std::string_view src, std::size_t pos) {
  std::string shown = pos < src.size() ? std::string(1, src[pos]) : "end of input";
  throw Error(ErrorCode::UnexpectedCharacter, "unexpected '" + shown + "'", pos);
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c)) {
      while (i < n && is_digit(src[i])) ++i;
      if (i < n && src[i] == '.') {
        ++i;
        while (i < n && is_digit(src[i])) ++i;
      }
      if (i < n && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < n && is_digit(src[j])) {
          i = j;
          while (i < n && is_digit(src[i])) ++i;
        } else {
          unexpected_char(src, j);
        }
      }
      // A number running straight into '.' or a letter is malformed.
      if (i < n && (src[i] == '.' || is_ident_start(src[i]))) unexpected_char(src, i);
      out.push_back({TokenKind::Number, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < n && is_ident_char(src[i])) ++i;
      out.push_back({TokenKind::Identifier, std::string(src.substr(start, i - start)), start});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '/': kind = TokenKind::Slash; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ',': kind = TokenKind::Comma; break;
      default: unexpected_char(src, i);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  return out;
}

std::optional<Function> function_from_name(std::string_view name) {
  if (name == "exp") return Function::Exp;
  if (name == "log") return Function::Log;
  if (name == "sin") return Function::Sin;
  if (name == "cos") return Function::Cos;
  if (name == "sinh") return Function::Sinh;
  if (name == "cosh") return Function::Cosh;
  if (name == "sqrt") return Function::Sqrt;
  return std::nullopt;
}

std::string_view to_string(Function fn) {
  switch (fn) {
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Sinh: return "sinh";
    case Function::Cosh: return "cosh";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Tree construction and equality

std::size_t Expr::position() const { return node_ ? node_->position : 0; }

Expr Expr::number(double v, std::size_t pos) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Number{v}, pos}));
}
Expr Expr::variable(std::string name, std::size_t pos) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Variable{std::move(name)}, pos}));
}
Expr Expr::parameter(std::string name, std::size_t pos) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Parameter{std::move(name)}, pos}));
}
Expr Expr::negate(Expr child, std::size_t pos) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Unary{std::move(child)}, pos}));
}
Expr Expr::binary(BinaryOp op, Expr left, Expr right, std::size_t pos) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{node::Binary{op, std::move(left), std::move(right)}, pos}));
}
Expr Expr::call(Function fn, std::vector<Expr> args, std::size_t pos) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Call{fn, std::move(args)}, pos}));
}

namespace {

struct NodeEqual {
  bool operator()(const node::Number& a, const node::Number& b) const { return a.value == b.value; }
  bool operator()(const node::Variable& a, const node::Variable& b) const { return a.name == b.name; }
  bool operator()(const node::Parameter& a, const node::Parameter& b) const { return a.name == b.name; }
  bool operator()(const node::Unary& a, const node::Unary& b) const { return a.child == b.child; }
  bool operator()(const node::Binary& a, const node::Binary& b) const {
    return a.op == b.op && a.left == b.left && a.right == b.right;
  }
  bool operator()(const node::Call& a, const node::Call& b) const {
    return a.fn == b.fn && a.args == b.args;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return std::visit(NodeEqual{}, a.node_->value, b.node_->value);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::span<const Token> tokens, std::span<const std::string> coordinates)
      : tokens_(tokens), coordinates_(coordinates) {}

  Expr run() {
    if (tokens_.empty()) {
      throw Error(ErrorCode::UnexpectedToken, "empty expression", 0);
    }
    Expr e = parse_sum();
    if (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_];
      if (t.kind == TokenKind::RParen) {
        throw Error(ErrorCode::UnbalancedParenthesis, "unmatched ')'", t.position);
      }
      throw Error(ErrorCode::UnexpectedToken,
                  "unexpected " + std::string(to_string(t.kind)) +
                      "; expected one of: operator, end of expression",
                  t.position);
    }
    return e;
  }

 private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }
  bool at(TokenKind k) const { return pos_ < tokens_.size() && tokens_[pos_].kind == k; }
  std::size_t end_offset() const {
    if (tokens_.empty()) return 0;
    const Token& last = tokens_.back();
    return last.position + last.text.size();
  }

  [[noreturn]] void fail_operand() const {
    const Token* t = peek();
    if (!t) {
      throw Error(ErrorCode::UnexpectedToken,
                  "unexpected end of expression; expected one of: number, identifier, '(', '-'",
                  end_offset());
    }
    if (t->kind == TokenKind::RParen) {
      throw Error(ErrorCode::UnbalancedParenthesis, "unmatched ')'", t->position);
    }
    throw Error(ErrorCode::UnexpectedToken,
                "unexpected " + std::string(to_string(t->kind)) +
                    "; expected one of: number, identifier, '(', '-'",
                t->position);
  }

  Expr parse_sum() {
    Expr left = parse_product();
    while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
      const Token& op = tokens_[pos_++];
      Expr right = parse_product();
      left = Expr::binary(op.kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub,
                          std::move(left), std::move(right), op.position);
    }
    return left;
  }

  Expr parse_product() {
    Expr left = parse_unary();
    while (at(TokenKind::Star) || at(TokenKind::Slash)) {
      const Token& op = tokens_[pos_++];
      Expr right = parse_unary();
      left = Expr::binary(op.kind == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div,
                          std::move(left), std::move(right), op.position);
    }
    return left;
  }

  Expr parse_unary() {
    if (at(TokenKind::Minus)) {
      const std::size_t p = tokens_[pos_++].position;
      return Expr::negate(parse_unary(), p);
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!at(TokenKind::Caret)) return base;
    const std::size_t p = tokens_[pos_++].position;
    Expr exponent = parse_exponent();
    if (!variables_of(exponent).empty()) {
      throw Error(ErrorCode::NonIntegerExponent,
                  "exponent may not depend on a coordinate", exponent.position());
    }
    return Expr::binary(BinaryOp::Pow, std::move(base), std::move(exponent), p);
  }

  Expr parse_exponent() {
    if (at(TokenKind::Minus)) {
      const std::size_t p = tokens_[pos_++].position;
      return Expr::negate(parse_exponent(), p);
    }
    return parse_power();
  }

  Expr parse_primary() {
    const Token* t = peek();
    if (!t) fail_operand();
    switch (t->kind) {
      case TokenKind::Number: {
        ++pos_;
        char* end = nullptr;
        const double v = std::strtod(t->text.c_str(), &end);
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::UnexpectedToken, "number out of range", t->position);
        }
        return Expr::number(v, t->position);
      }
      case TokenKind::Identifier: {
        ++pos_;
        if (at(TokenKind::LParen)) return parse_call(*t);
        if (std::find(coordinates_.begin(), coordinates_.end(), t->text) != coordinates_.end()) {
          return Expr::variable(t->text, t->position);
        }
        if (t->text == "pi") return Expr::number(std::numbers::pi, t->position);
        return Expr::parameter(t->text, t->position);
      }
      case TokenKind::LParen: {
        const std::size_t open = t->position;
        ++pos_;
        Expr inner = parse_sum();
        if (!at(TokenKind::RParen)) {
          if (!peek()) {
            throw Error(ErrorCode::UnbalancedParenthesis, "missing ')'", open);
          }
          throw Error(ErrorCode::UnexpectedToken,
                      "unexpected " + std::string(to_string(peek()->kind)) +
                          "; expected one of: operator, ')'",
                      peek()->position);
        }
        ++pos_;
        return inner;
      }
      default:
        fail_operand();
    }
  }

  Expr parse_call(const Token& name) {
    const auto fn = function_from_name(name.text);
    if (!fn) {
      throw Error(ErrorCode::UnknownFunction, "unknown function '" + name.text + "'",
                  name.position);
    }
    const std::size_t open = tokens_[pos_++].position;
    std::vector<Expr> args;
    args.push_back(parse_sum());
    if (at(TokenKind::Comma)) {
      throw Error(ErrorCode::UnexpectedToken,
                  std::string(to_string(*fn)) + " takes exactly one argument; expected ')'",
                  tokens_[pos_].position);
    }
    if (!at(TokenKind::RParen)) {
      if (!peek()) throw Error(ErrorCode::UnbalancedParenthesis, "missing ')'", open);
      throw Error(ErrorCode::UnexpectedToken,
                  "unexpected " + std::string(to_string(peek()->kind)) +
                      "; expected one of: operator, ')'",
                  peek()->position);
    }
    ++pos_;
    return Expr::call(*fn, std::move(args), name.position);
  }

  std::span<const Token> tokens_;
  std::span<const std::string> coordinates_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::span<const Token> tokens, std::span<const std::string> coordinates) {
  return Parser(tokens, coordinates).run();
}

Expr parse_expression(std::string_view src, std::span<const std::string> coordinates) {
  const auto tokens = tokenize(src);
  return parse(tokens, coordinates);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

constexpr double kIntegerTolerance = 1e-9;

struct Evaluator {
  const JetEnv& env;
  const ParamMap& params;

  Jet3 eval(const Expr& e) const {
    try {
      return std::visit([&](const auto& n) { return this->visit(n, e.position()); },
                        e.node().value);
    } catch (const Error& err) {
      throw err.with_offset(e.position());
    }
  }

  Jet3 visit(const node::Number& n, std::size_t) const { return Jet3::constant(n.value); }

  Jet3 visit(const node::Variable& n, std::size_t pos) const {
    const auto it = env.find(n.name);
    if (it == env.end()) {
      throw Error(ErrorCode::UnboundName, "unbound coordinate '" + n.name + "'", pos);
    }
    return it->second;
  }

  Jet3 visit(const node::Parameter& n, std::size_t pos) const {
    const auto it = params.find(n.name);
    if (it == params.end()) {
      throw Error(ErrorCode::UnboundName, "unbound parameter '" + n.name + "'", pos);
    }
    return Jet3::constant(it->second);
  }

  Jet3 visit(const node::Unary& n, std::size_t) const { return -eval(n.child); }

  Jet3 visit(const node::Binary& n, std::size_t) const {
    if (n.op == BinaryOp::Pow) {
      const Jet3 base = eval(n.left);
      const double ex = eval(n.right).value();
      const double rounded = std::round(ex);
      if (!(std::fabs(ex - rounded) <= kIntegerTolerance) || std::fabs(rounded) > 1e6) {
        throw Error(ErrorCode::NonIntegerExponent, "exponent is not an integer",
                    n.right.position());
      }
      return powi(base, static_cast<int>(rounded));
    }
    const Jet3 a = eval(n.left);
    const Jet3 b = eval(n.right);
    switch (n.op) {
      case BinaryOp::Add: return a + b;
      case BinaryOp::Sub: return a - b;
      case BinaryOp::Mul: return a * b;
      case BinaryOp::Div: return a / b;
      case BinaryOp::Pow: break;
    }
    return {};
  }

  Jet3 visit(const node::Call& n, std::size_t) const {
    const Jet3 a = eval(n.args.front());
    switch (n.fn) {
      case Function::Exp: return exp(a);
      case Function::Log: return log(a);
      case Function::Sin: return sin(a);
      case Function::Cos: return cos(a);
      case Function::Sinh: return sinh(a);
      case Function::Cosh: return cosh(a);
      case Function::Sqrt: return sqrt(a);
    }
    return {};
  }
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return " + ";
    case BinaryOp::Sub: return " - ";
    case BinaryOp::Mul: return " * ";
    case BinaryOp::Div: return " / ";
    case BinaryOp::Pow: return " ^ ";
  }
  return " ? ";
}

void collect(const Expr& e, bool want_variables, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Variable>) {
          if (want_variables && std::find(out.begin(), out.end(), n.name) == out.end())
            out.push_back(n.name);
        } else if constexpr (std::is_same_v<T, node::Parameter>) {
          if (!want_variables && std::find(out.begin(), out.end(), n.name) == out.end())
            out.push_back(n.name);
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          collect(n.child, want_variables, out);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          collect(n.left, want_variables, out);
          collect(n.right, want_variables, out);
        } else if constexpr (std::is_same_v<T, node::Call>) {
          for (const Expr& a : n.args) collect(a, want_variables, out);
        }
      },
      e.node().value);
}

}  // namespace

Jet3 evaluate(const Expr& e, const JetEnv& env, const ParamMap& params) {
  return Evaluator{env, params}.eval(e);
}

std::string to_string(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Number>) {
          return format_number(n.value);
        } else if constexpr (std::is_same_v<T, node::Variable> ||
                             std::is_same_v<T, node::Parameter>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          return "(-" + to_string(n.child) + ")";
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          return "(" + to_string(n.left) + std::string(op_text(n.op)) + to_string(n.right) + ")";
        } else {
          std::string s(to_string(n.fn));
          s += "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) s += ", ";
            s += to_string(n.args[i]);
          }
          return s + ")";
        }
      },
      e.node().value);
}

std::vector<std::string> variables_of(const Expr& e) {
  std::vector<std::string> out;
  collect(e, true, out);
  return out;
}

std::vector<std::string> parameters_of(const Expr& e) {
  std::vector<std::string> out;
  collect(e, false, out);
  return out;
}

}  // namespace qcst
