#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qcst/error.hpp"
#include "qcst/expr.hpp"

using namespace qcst;

namespace {

const std::array<std::string, 4> kCoords{"t", "x", "y", "z"};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

// Scalar tree-walking evaluator used as an oracle for the jet evaluator.
double scalar_eval(const Expr& e, const std::map<std::string, double>& env) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, node::Variable> || std::is_same_v<T, node::Parameter>) {
          return env.at(n.name);
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          return -scalar_eval(n.child, env);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          const double a = scalar_eval(n.left, env), b = scalar_eval(n.right, env);
          switch (n.op) {
            case BinaryOp::Add: return a + b;
            case BinaryOp::Sub: return a - b;
            case BinaryOp::Mul: return a * b;
            case BinaryOp::Div: return a / b;
            case BinaryOp::Pow: return std::pow(a, b);
          }
          return NAN;
        } else {
          const double a = scalar_eval(n.args.at(0), env);
          switch (n.fn) {
            case Function::Exp: return std::exp(a);
            case Function::Log: return std::log(a);
            case Function::Sin: return std::sin(a);
            case Function::Cos: return std::cos(a);
            case Function::Sinh: return std::sinh(a);
            case Function::Cosh: return std::cosh(a);
            case Function::Sqrt: return std::sqrt(a);
          }
          return NAN;
        }
      },
      e.node().value);
}

}  // namespace

TEST(Tokenize, Examples) {
  const auto toks = tokenize("-t^2");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[0].kind, TokenKind::Minus);
  EXPECT_EQ(toks[1].kind, TokenKind::Identifier);
  EXPECT_EQ(toks[1].text, "t");
  EXPECT_EQ(toks[2].kind, TokenKind::Caret);
  EXPECT_EQ(toks[3].kind, TokenKind::Number);
  EXPECT_EQ(toks[3].text, "2");
  // exp ( r ) * sin ( theta )
  EXPECT_EQ(tokenize("exp(r)*sin(theta)").size(), 9u);
}

TEST(Tokenize, PositionsIncrease) {
  const auto toks = tokenize("  a + 2.5e-3*sinh( b ) / c");
  for (std::size_t i = 1; i < toks.size(); ++i) EXPECT_GT(toks[i].position, toks[i - 1].position);
  EXPECT_EQ(toks[0].position, 2u);
}

TEST(Tokenize, MalformedNumber) {
  try {
    tokenize("1..2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnexpectedCharacter);
    ASSERT_TRUE(e.offset());
    EXPECT_EQ(*e.offset(), 2u);
  }
  EXPECT_EQ(code_of([] { tokenize("a $ b"); }), ErrorCode::UnexpectedCharacter);
}

TEST(Parse, Precedence) {
  const Expr e = parse_expression("a+b*c");
  const Expr want = Expr::binary(BinaryOp::Add, Expr::parameter("a"),
                                 Expr::binary(BinaryOp::Mul, Expr::parameter("b"), Expr::parameter("c")));
  EXPECT_EQ(e, want);
}

TEST(Parse, UnaryMinusBindsLooserThanPower) {
  const Expr e = parse_expression("-t^2", kCoords);
  const Expr want =
      Expr::negate(Expr::binary(BinaryOp::Pow, Expr::variable("t"), Expr::number(2)));
  EXPECT_EQ(e, want);
  const Jet3 v = evaluate(e, {{"t", Jet3::variable(0, 3.0)}}, {});
  EXPECT_DOUBLE_EQ(v.value(), -9.0);
}

TEST(Parse, PowerIsRightAssociative) {
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("2^3^2"), {}, {}).value(), 512.0);
}

TEST(Parse, Errors) {
  EXPECT_EQ(code_of([] { parse_expression("(1+2"); }), ErrorCode::UnbalancedParenthesis);
  EXPECT_EQ(code_of([] { parse_expression("1+2)"); }), ErrorCode::UnbalancedParenthesis);
  EXPECT_EQ(code_of([] { parse_expression("tan(1)"); }), ErrorCode::UnknownFunction);
  EXPECT_EQ(code_of([] { parse_expression("1 +"); }), ErrorCode::UnexpectedToken);
  EXPECT_EQ(code_of([] { parse_expression("* 2"); }), ErrorCode::UnexpectedToken);
  EXPECT_EQ(code_of([] { parse_expression(""); }), ErrorCode::UnexpectedToken);
  EXPECT_EQ(code_of([] { parse_expression("2^t", kCoords); }), ErrorCode::NonIntegerExponent);
}

TEST(Evaluate, Examples) {
  const Jet3 t2 = evaluate(parse_expression("t^2", kCoords), {{"t", Jet3::variable(0, 1.0)}}, {});
  EXPECT_DOUBLE_EQ(t2.coeff({0, 0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(t2.coeff({1, 0, 0, 0}), 2.0);
  EXPECT_DOUBLE_EQ(t2.coeff({2, 0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(t2.coeff({3, 0, 0, 0}), 0.0);

  const Jet3 k = evaluate(parse_expression("k"), {}, {{"k", 1.0}});
  EXPECT_EQ(k, Jet3::constant(1.0));

  for (double x0 : {-1.3, 0.0, 0.4, 2.9}) {
    const Jet3 one = evaluate(parse_expression("sin(x)^2 + cos(x)^2", kCoords),
                              {{"x", Jet3::variable(1, x0)}}, {});
    EXPECT_NEAR(one.value(), 1.0, 1e-13);
    for (int s = 1; s < Jet3::kSize; ++s) EXPECT_NEAR(one.coeffs()[s], 0.0, 1e-13);
  }
}

TEST(Evaluate, Errors) {
  EXPECT_EQ(code_of([] { evaluate(parse_expression("q + 1"), {}, {}); }), ErrorCode::UnboundName);
  EXPECT_EQ(code_of([] { evaluate(parse_expression("2^(1/2)"), {}, {}); }),
            ErrorCode::NonIntegerExponent);
  try {
    evaluate(parse_expression("1 + log(x - 5)", kCoords), {{"x", Jet3::variable(1, 1.0)}}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainErrorJet);
    EXPECT_TRUE(e.offset().has_value());
  }
}

TEST(Evaluate, Deterministic) {
  const Expr e = parse_expression("exp(t)*sinh(x/3) - y^3/(1+z^2)", kCoords);
  JetEnv env{{"t", Jet3::variable(0, 0.1)}, {"x", Jet3::variable(1, 0.2)},
             {"y", Jet3::variable(2, 0.3)}, {"z", Jet3::variable(3, 0.4)}};
  EXPECT_EQ(evaluate(e, env, {}), evaluate(e, env, {}));
}

namespace {

std::string random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  static const char* leaves[] = {"t", "x", "y", "k", "1.5", "2", "0.25"};
  static const char* fns[] = {"exp", "sin", "cos", "sinh", "cosh"};
  std::uniform_int_distribution<int> leaf(0, 6), fn(0, 4), pw(-2, 3);
  switch (pick(rng)) {
    case 0:
    case 1:
    case 2: return leaves[leaf(rng)];
    case 3: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 4: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
    case 6: return "(" + random_expr(rng, depth - 1) + ")/(2 + sin(" + random_expr(rng, depth - 1) + "))";
    case 7: return "(" + random_expr(rng, depth - 1) + ")^(" + std::to_string(pw(rng)) + ")";
    case 8: return "-" + random_expr(rng, depth - 1);
    default: return std::string(fns[fn(rng)]) + "(" + random_expr(rng, depth - 1) + " / 4)";
  }
}

}  // namespace

TEST(ExprProperty, RandomCorpusMatchesScalarEvaluator) {
  std::mt19937 rng(42);
  int checked = 0;
  for (int n = 0; n < 100; ++n) {
    const std::string src = random_expr(rng, 4);
    const Expr e = parse_expression(src, kCoords);
    const std::map<std::string, double> vals{{"t", 0.7}, {"x", -0.3}, {"y", 1.1}, {"k", 0.9}};
    const JetEnv env{{"t", Jet3::variable(0, 0.7)}, {"x", Jet3::variable(1, -0.3)},
                     {"y", Jet3::variable(2, 1.1)}, {"z", Jet3::variable(3, 0.0)}};
    double jet_value;
    try {
      jet_value = evaluate(e, env, {{"k", 0.9}}).value();
    } catch (const Error& err) {
      // Zero base raised to a negative power.
      EXPECT_EQ(err.code(), ErrorCode::DivisionByZeroJet) << src;
      continue;
    }
    const double ref = scalar_eval(e, vals);
    EXPECT_NEAR(jet_value, ref, 1e-13 * std::max(1.0, std::abs(ref))) << src;
    ++checked;
  }
  EXPECT_GT(checked, 90);
}

TEST(ExprProperty, PrintParseRoundTrip) {
  std::mt19937 rng(5);
  for (int n = 0; n < 100; ++n) {
    const Expr e = parse_expression(random_expr(rng, 4), kCoords);
    EXPECT_EQ(parse_expression(to_string(e), kCoords), e) << to_string(e);
  }
}

TEST(ExprQueries, VariablesAndParameters) {
  const Expr e = parse_expression("M*x + exp(t)/Q + pi", kCoords);
  EXPECT_EQ(variables_of(e), (std::vector<std::string>{"x", "t"}));
  EXPECT_EQ(parameters_of(e), (std::vector<std::string>{"M", "Q"}));
}
