#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcst/jet.hpp"

namespace qcst {

enum class TokenKind {
  Number,
  Identifier,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  Comma,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;  // byte offset into the source

  friend bool operator==(const Token&, const Token&) = default;
};

/// Maximal-munch tokenizer. Numbers are `digits[.digits][(e|E)[+-]digits]`
/// and must start with a digit. Throws UnexpectedCharacter.
std::vector<Token> tokenize(std::string_view src);

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Exp, Log, Sin, Cos, Sinh, Cosh, Sqrt };

std::optional<Function> function_from_name(std::string_view name);
std::string_view to_string(Function fn);

struct ExprNode;

/// Immutable expression tree; copies share nodes. Equality is structural and
/// ignores source positions.
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  bool empty() const noexcept { return node_ == nullptr; }
  const ExprNode& node() const { return *node_; }
  std::size_t position() const;

  static Expr number(double v, std::size_t pos = 0);
  static Expr variable(std::string name, std::size_t pos = 0);
  static Expr parameter(std::string name, std::size_t pos = 0);
  static Expr negate(Expr child, std::size_t pos = 0);
  static Expr binary(BinaryOp op, Expr left, Expr right, std::size_t pos = 0);
  static Expr call(Function fn, std::vector<Expr> args, std::size_t pos = 0);

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const ExprNode> node_;
};

namespace node {
struct Number {
  double value;
};
struct Variable {
  std::string name;
};
struct Parameter {
  std::string name;
};
struct Unary {  // negation
  Expr child;
};
struct Binary {
  BinaryOp op;
  Expr left;
  Expr right;
};
struct Call {
  Function fn;
  std::vector<Expr> args;
};
}  // namespace node

struct ExprNode {
  std::variant<node::Number, node::Variable, node::Parameter, node::Unary,
               node::Binary, node::Call>
      value;
  std::size_t position = 0;
};

/// Precedence climbing, lowest to highest: `+ -`, `* /`, unary `-`, `^`
/// (right-associative), function call. So `-t^2` is `-(t^2)` and `2^3^2` is
/// `2^9`. Identifiers listed in `coordinates` become Variable nodes; `pi` is
/// the constant; every other name is a Parameter. The exponent of `^` may
/// not mention a coordinate.
Expr parse(std::span<const Token> tokens,
           std::span<const std::string> coordinates = {});

/// tokenize + parse.
Expr parse_expression(std::string_view src,
                      std::span<const std::string> coordinates = {});

using JetEnv = std::map<std::string, Jet3, std::less<>>;
using ParamMap = std::map<std::string, double, std::less<>>;

/// Jet-valued evaluation. Throws UnboundName, NonIntegerExponent, and jet
/// errors (DomainErrorJet, DivisionByZeroJet) tagged with the node's offset.
Jet3 evaluate(const Expr& e, const JetEnv& env, const ParamMap& params);

/// Fully parenthesized rendering that re-parses to the same tree.
std::string to_string(const Expr& e);

/// Names of Variable / Parameter nodes, in first-occurrence order.
std::vector<std::string> variables_of(const Expr& e);
std::vector<std::string> parameters_of(const Expr& e);

}  // namespace qcst
