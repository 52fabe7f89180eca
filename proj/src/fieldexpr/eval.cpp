#include "circv/fieldexpr/eval.hpp"

#include <array>
#include <cmath>

#include "circv/errors.hpp"

namespace circv::fieldexpr {

namespace {

inline double primal(double x) { return x; }
inline double primal(const Jet2& j) { return j.value(); }

template <class T>
T pow_int(const T& base, long long n) {
  if (n < 0) return T(1.0) / pow_int(base, -n);
  T result(1.0);
  T acc = base;
  for (long long k = n; k > 0; k >>= 1) {
    if (k & 1) result = result * acc;
    acc = acc * acc;
  }
  return result;
}

/// Exponent treated as an integer when it is a literal with an integral
/// value; such powers use repeated multiplication and stay valid for
/// non-positive bases.
bool integer_exponent(const Expr& rhs, long long& n) {
  const auto* c = std::get_if<Expr::Constant>(&rhs.node);
  if (c == nullptr) return false;
  const double v = c->value;
  if (!(std::abs(v) <= 1e15) || v != std::nearbyint(v)) return false;
  n = static_cast<long long>(v);
  return true;
}

template <class T>
T evaluate(const Expr& e, const std::array<T, 3>& x) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  using std::tan;

  if (const auto* c = std::get_if<Expr::Constant>(&e.node)) {
    return T(c->value);
  }
  if (const auto* v = std::get_if<Expr::Variable>(&e.node)) {
    return x[v->axis];
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    const T a = evaluate(*u->arg, x);
    switch (u->op) {
      case UnOp::Neg:
        return -a;
      case UnOp::Exp:
        return exp(a);
      case UnOp::Log:
        if (!(primal(a) > 0))
          throw DomainError(to_string(e), "log of a non-positive value");
        return log(a);
      case UnOp::Sin:
        return sin(a);
      case UnOp::Cos:
        return cos(a);
      case UnOp::Tan:
        return tan(a);
      case UnOp::Sqrt:
        if (primal(a) < 0)
          throw DomainError(to_string(e), "sqrt of a negative value");
        return sqrt(a);
    }
  }

  const auto& b = std::get<Expr::Binary>(e.node);
  if (b.op == BinOp::Pow) {
    long long n = 0;
    if (integer_exponent(*b.rhs, n)) {
      const T base = evaluate(*b.lhs, x);
      if (n < 0 && primal(base) == 0)
        throw DomainError(to_string(e), "zero base with negative exponent");
      return pow_int(base, n);
    }
    const T base = evaluate(*b.lhs, x);
    if (!(primal(base) > 0))
      throw DomainError(to_string(e), "power of a non-positive base");
    const T expo = evaluate(*b.rhs, x);
    return exp(expo * log(base));  // u^v = exp(v log u)
  }

  const T lhs = evaluate(*b.lhs, x);
  const T rhs = evaluate(*b.rhs, x);
  switch (b.op) {
    case BinOp::Add:
      return lhs + rhs;
    case BinOp::Sub:
      return lhs - rhs;
    case BinOp::Mul:
      return lhs * rhs;
    case BinOp::Div:
      if (primal(rhs) == 0) throw DomainError(to_string(e), "division by zero");
      return lhs / rhs;
    case BinOp::Pow:
      break;  // handled above
  }
  throw Error("unreachable expression node");
}

}  // namespace

Jet2 eval_jet2(const ScalarField& field, const Point& p) {
  const std::array<Jet2, 3> vars = {Jet2::variable(0, p[0]),
                                    Jet2::variable(1, p[1]),
                                    Jet2::variable(2, p[2])};
  return evaluate(field.ast(), vars);
}

double eval_value(const ScalarField& field, const Point& p) {
  const std::array<double, 3> vars = {p[0], p[1], p[2]};
  return evaluate(field.ast(), vars);
}

Jet2 fd_jet2_oracle(const ScalarField& field, const Point& p, double step) {
  if (!(step > 0)) throw Error("fd_jet2_oracle requires a positive step");

  const auto at = [&](int i, double si, int j, double sj) {
    Point q = p;
    q[i] += si * step;
    if (j >= 0) q[j] += sj * step;
    return eval_value(field, q);
  };

  const double f0 = eval_value(field, p);
  Vec3 grad;
  Mat3 hess;
  for (int i = 0; i < 3; ++i) {
    const double fp = at(i, +1, -1, 0);
    const double fm = at(i, -1, -1, 0);
    grad[i] = (fp - fm) / (2 * step);
    hess(i, i) = (fp - 2 * f0 + fm) / (step * step);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double fpp = at(i, +1, j, +1);
      const double fpm = at(i, +1, j, -1);
      const double fmp = at(i, -1, j, +1);
      const double fmm = at(i, -1, j, -1);
      hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4 * step * step);
    }
  }
  return Jet2::from_parts(f0, grad, hess);
}

}  // namespace circv::fieldexpr
