#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace circv::fieldexpr {

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class UnOp { Neg, Exp, Log, Sin, Cos, Tan, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over the coordinates x1, x2, x3.
struct Expr {
  struct Constant {
    double value;
  };
  struct Variable {
    int axis;  // 0..2 for x1..x3
  };
  struct Unary {
    UnOp op;
    ExprPtr arg;
  };
  struct Binary {
    BinOp op;
    ExprPtr lhs, rhs;
  };

  std::variant<Constant, Variable, Unary, Binary> node;
};

ExprPtr make_constant(double value);
ExprPtr make_variable(int axis);
ExprPtr make_unary(UnOp op, ExprPtr arg);  // folds Neg(Constant c) -> Constant(-c)
ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs);

bool structurally_equal(const Expr& a, const Expr& b);

/// Minimal-parenthesis rendering; parsing the result reproduces the tree.
std::string to_string(const Expr& e);

/// A parsed scalar field together with its source text.
class ScalarField {
public:
  ScalarField() = default;
  ScalarField(ExprPtr ast, std::string source)
      : ast_(std::move(ast)), source_(std::move(source)) {}

  bool empty() const { return ast_ == nullptr; }
  const Expr& ast() const { return *ast_; }
  const std::string& source() const { return source_; }
  std::string canonical() const { return to_string(*ast_); }

private:
  ExprPtr ast_;
  std::string source_;
};

/// Parses the expression grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := number | x1|x2|x3 | pi | e | ident '(' expr ')' | '(' expr ')'
/// with ident in {exp, log, sin, cos, tan, sqrt}. Throws ParseError.
ScalarField parse(std::string_view text);

}  // namespace circv::fieldexpr
