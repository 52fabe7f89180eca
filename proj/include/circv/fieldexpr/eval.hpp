#pragma once

#include "circv/fieldexpr/expr.hpp"
#include "circv/fieldexpr/jet.hpp"
#include "circv/types.hpp"

namespace circv::fieldexpr {

/// Value, gradient and Hessian of the field at p, propagated through the
/// tree by second-order jet arithmetic (exact to floating point).
Jet2 eval_jet2(const ScalarField& field, const Point& p);

/// Plain value of the field at p (same domain checks as eval_jet2).
double eval_value(const ScalarField& field, const Point& p);

/// Independent derivative oracle: central differences for the gradient,
/// standard second-difference and cross stencils for the Hessian.
Jet2 fd_jet2_oracle(const ScalarField& field, const Point& p, double step);

}  // namespace circv::fieldexpr
