#include "circv/fieldexpr/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <vector>

#include "circv/errors.hpp"
#include "circv/numfmt.hpp"

namespace circv::fieldexpr {

ExprPtr make_constant(double value) {
  return std::make_shared<Expr>(Expr{Expr::Constant{value}});
}

ExprPtr make_variable(int axis) {
  return std::make_shared<Expr>(Expr{Expr::Variable{axis}});
}

ExprPtr make_unary(UnOp op, ExprPtr arg) {
  if (op == UnOp::Neg) {
    if (const auto* c = std::get_if<Expr::Constant>(&arg->node)) {
      // Fold so that printing a negative literal round-trips to the same
      // tree: parse("-3") == Constant(-3).
      return make_constant(-c->value);
    }
  }
  return std::make_shared<Expr>(Expr{Expr::Unary{op, std::move(arg)}});
}

ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(
      Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}});
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* ca = std::get_if<Expr::Constant>(&a.node)) {
    return ca->value == std::get<Expr::Constant>(b.node).value;
  }
  if (const auto* va = std::get_if<Expr::Variable>(&a.node)) {
    return va->axis == std::get<Expr::Variable>(b.node).axis;
  }
  if (const auto* ua = std::get_if<Expr::Unary>(&a.node)) {
    const auto& ub = std::get<Expr::Unary>(b.node);
    return ua->op == ub.op && structurally_equal(*ua->arg, *ub.arg);
  }
  const auto& ba = std::get<Expr::Binary>(a.node);
  const auto& bb = std::get<Expr::Binary>(b.node);
  return ba.op == bb.op && structurally_equal(*ba.lhs, *bb.lhs) &&
         structurally_equal(*ba.rhs, *bb.rhs);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence levels used both for parsing decisions and printing:
// add/sub = 1, mul/div = 2, unary neg = 3, pow = 4, atoms = 5.
int precedence_of(const Expr& e) {
  if (const auto* c = std::get_if<Expr::Constant>(&e.node)) {
    // A negative literal prints with a leading '-', so it binds like a
    // unary negation for parenthesization purposes.
    return c->value < 0 ? 3 : 5;
  }
  if (std::holds_alternative<Expr::Variable>(e.node)) return 5;
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    return u->op == UnOp::Neg ? 3 : 5;  // function calls are atoms
  }
  switch (std::get<Expr::Binary>(e.node).op) {
    case BinOp::Add:
    case BinOp::Sub:
      return 1;
    case BinOp::Mul:
    case BinOp::Div:
      return 2;
    case BinOp::Pow:
      return 4;
  }
  return 5;
}

std::string format_number(double v) { return format_roundtrip(v); }

const char* function_name(UnOp op) {
  switch (op) {
    case UnOp::Exp:
      return "exp";
    case UnOp::Log:
      return "log";
    case UnOp::Sin:
      return "sin";
    case UnOp::Cos:
      return "cos";
    case UnOp::Tan:
      return "tan";
    case UnOp::Sqrt:
      return "sqrt";
    case UnOp::Neg:
      break;
  }
  return "?";
}

void print(const Expr& e, int min_prec, std::string& out) {
  const int prec = precedence_of(e);
  const bool parens = prec < min_prec;
  if (parens) out += '(';

  if (const auto* c = std::get_if<Expr::Constant>(&e.node)) {
    out += format_number(c->value);
  } else if (const auto* v = std::get_if<Expr::Variable>(&e.node)) {
    out += 'x';
    out += static_cast<char>('1' + v->axis);
  } else if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    if (u->op == UnOp::Neg) {
      out += '-';
      print(*u->arg, 3, out);
    } else {
      out += function_name(u->op);
      out += '(';
      print(*u->arg, 0, out);
      out += ')';
    }
  } else {
    const auto& b = std::get<Expr::Binary>(e.node);
    switch (b.op) {
      case BinOp::Add:
        print(*b.lhs, 1, out);
        out += " + ";
        print(*b.rhs, 2, out);  // left-assoc: parenthesize equal-prec rhs
        break;
      case BinOp::Sub:
        print(*b.lhs, 1, out);
        out += " - ";
        print(*b.rhs, 2, out);
        break;
      case BinOp::Mul:
        print(*b.lhs, 2, out);
        out += "*";
        print(*b.rhs, 3, out);
        break;
      case BinOp::Div:
        print(*b.lhs, 2, out);
        out += "/";
        print(*b.rhs, 3, out);
        break;
      case BinOp::Pow:
        print(*b.lhs, 5, out);  // base must be an atom
        out += "^";
        print(*b.rhs, 3, out);  // exponent may be a factor ('-' included)
        break;
    }
  }

  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lexing + recursive-descent parsing
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Type {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End
  };
  Type type;
  std::size_t offset;
  double number = 0.0;
  std::string text{};
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Token::Type::End, start};

    const char c = src_[pos_];
    switch (c) {
      case '+':
        ++pos_;
        return {Token::Type::Plus, start};
      case '-':
        ++pos_;
        return {Token::Type::Minus, start};
      case '*':
        ++pos_;
        return {Token::Type::Star, start};
      case '/':
        ++pos_;
        return {Token::Type::Slash, start};
      case '^':
        ++pos_;
        return {Token::Type::Caret, start};
      case '(':
        ++pos_;
        return {Token::Type::LParen, start};
      case ')':
        ++pos_;
        return {Token::Type::RParen, start};
      case ',':
        ++pos_;
        return {Token::Type::Comma, start};
      default:
        break;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lex_number(start);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) ||
              src_[end] == '_'))
        ++end;
      Token t{Token::Type::Ident, start};
      t.text = std::string(src_.substr(start, end - start));
      pos_ = end;
      return t;
    }
    throw ParseError(ParseError::Kind::Syntax, start,
                     std::string("unexpected character '") + c + "'");
  }

private:
  Token lex_number(std::size_t start) {
    std::size_t end = pos_;
    while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end])))
      ++end;
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end])))
        ++end;
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
      if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
        ++exp;
        while (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp])))
          ++exp;
        end = exp;
      }
    }
    double value = 0.0;
    const auto result =
        std::from_chars(src_.data() + start, src_.data() + end, value);
    if (result.ec != std::errc{} || result.ptr != src_.data() + end) {
      throw ParseError(ParseError::Kind::Syntax, start, "malformed number");
    }
    Token t{Token::Type::Number, start};
    t.number = value;
    pos_ = end;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::optional<UnOp> function_from_name(std::string_view name) {
  if (name == "exp") return UnOp::Exp;
  if (name == "log") return UnOp::Log;
  if (name == "sin") return UnOp::Sin;
  if (name == "cos") return UnOp::Cos;
  if (name == "tan") return UnOp::Tan;
  if (name == "sqrt") return UnOp::Sqrt;
  return std::nullopt;
}

class Parser {
public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    if (current_.type != Token::Type::End) {
      throw ParseError(ParseError::Kind::Syntax, current_.offset,
                       "unexpected trailing input");
    }
    return e;
  }

private:
  static constexpr int kMaxDepth = 256;

  void advance() { current_ = lexer_.next(); }

  ExprPtr parse_expr() {
    if (++depth_ > kMaxDepth) {
      throw ParseError(ParseError::Kind::Syntax, current_.offset,
                       "expression nests too deeply");
    }
    ExprPtr e = parse_expr_impl();
    --depth_;
    return e;
  }

  ExprPtr parse_expr_impl() {
    ExprPtr lhs = parse_term();
    while (current_.type == Token::Type::Plus ||
           current_.type == Token::Type::Minus) {
      const BinOp op =
          current_.type == Token::Type::Plus ? BinOp::Add : BinOp::Sub;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (current_.type == Token::Type::Star ||
           current_.type == Token::Type::Slash) {
      const BinOp op =
          current_.type == Token::Type::Star ? BinOp::Mul : BinOp::Div;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_factor());
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    if (++depth_ > kMaxDepth) {
      throw ParseError(ParseError::Kind::Syntax, current_.offset,
                       "expression nests too deeply");
    }
    ExprPtr e;
    if (current_.type == Token::Type::Minus) {
      advance();
      e = make_unary(UnOp::Neg, parse_factor());
    } else {
      e = parse_power();
    }
    --depth_;
    return e;
  }

  // power binds tighter than unary minus; '^' is right-associative
  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (current_.type == Token::Type::Caret) {
      advance();
      return make_binary(BinOp::Pow, std::move(base), parse_factor());
    }
    return base;
  }

  ExprPtr parse_atom() {
    switch (current_.type) {
      case Token::Type::Number: {
        const double v = current_.number;
        advance();
        return make_constant(v);
      }
      case Token::Type::LParen: {
        advance();
        ExprPtr e = parse_expr();
        expect(Token::Type::RParen, "expected ')'");
        return e;
      }
      case Token::Type::Ident:
        return parse_identifier();
      default:
        throw ParseError(ParseError::Kind::Syntax, current_.offset,
                         "expected an expression");
    }
  }

  ExprPtr parse_identifier() {
    const Token tok = current_;
    advance();
    if (tok.text == "x1" || tok.text == "x2" || tok.text == "x3") {
      return make_variable(tok.text[1] - '1');
    }
    if (tok.text == "pi") return make_constant(std::numbers::pi);
    if (tok.text == "e") return make_constant(std::numbers::e);

    if (const auto fn = function_from_name(tok.text)) {
      if (current_.type != Token::Type::LParen) {
        throw ParseError(ParseError::Kind::Arity, current_.offset,
                         "function '" + tok.text + "' expects one argument");
      }
      advance();
      ExprPtr arg = parse_expr();
      if (current_.type == Token::Type::Comma) {
        throw ParseError(ParseError::Kind::Arity, current_.offset,
                         "function '" + tok.text + "' takes exactly one argument");
      }
      expect(Token::Type::RParen, "expected ')'");
      return make_unary(*fn, std::move(arg));
    }
    throw ParseError(ParseError::Kind::UnknownIdentifier, tok.offset,
                     "unknown identifier '" + tok.text + "'");
  }

  void expect(Token::Type type, const std::string& message) {
    if (current_.type != type) {
      throw ParseError(ParseError::Kind::Syntax, current_.offset, message);
    }
    advance();
  }

  Lexer lexer_;
  Token current_{Token::Type::End, 0};
  int depth_ = 0;
};

}  // namespace

ScalarField parse(std::string_view text) {
  if (text.empty()) {
    throw ParseError(ParseError::Kind::Syntax, 0, "empty expression");
  }
  Parser parser(text);
  return ScalarField(parser.parse_all(), std::string(text));
}

}  // namespace circv::fieldexpr
