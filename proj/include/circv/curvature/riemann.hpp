#pragma once

#include "circv/classv/frame.hpp"
#include "circv/curvature/connection.hpp"
#include "circv/tensor3/tensors.hpp"

namespace circv::curvature {

/// R^h_{ijk} = d_j Gamma^h_{ik} - d_k Gamma^h_{ij}
///           + Gamma^s_{ik} Gamma^h_{sj} - Gamma^s_{ij} Gamma^h_{sk}.
/// The sign convention is pinned so that the curvature-transfer relation of
/// two connections holds verbatim, with Ricci R_ij = R^k_{ijk}.
tensor3::Rank4 riemann(const Connection& c);

struct CurvatureReport {
  tensor3::Rank4 R_mixed{tensor3::Variance::Mixed};
  tensor3::Rank4 R_lower{tensor3::Variance::Lower};
  tensor3::SymMat3 ricci;
  double tau = 0.0;       // R_ij g^{ij}
  double tau_star = 0.0;  // R_ij f^{ij}
};

/// Contracts Ricci and both scalar curvatures; lowers R with the frame's g.
CurvatureReport ricci_and_scalars(const tensor3::Rank4& mixed,
                                  const classv::MetricFrame& frame);

/// The curvature forced by a flat deformed metric, in all-lower form:
/// R_{hijk} = tau0/6 (2 g_{kh} g_{ij} - 2 g_{hj} g_{ki}
///            + f_{kh} f_{ij} - f_{hj} f_{ki}).
tensor3::Rank4 theorem18_curvature(double tau0,
                                   const classv::MetricFrame& frame);

/// mu(x, y) = R(x,y,x,y) / (g(x,x) g(y,y) - g(x,y)^2); degenerate-plane
/// error when the denominator vanishes against the scale of g.
double sectional_curvature(const tensor3::Rank4& lower,
                           const tensor3::SymMat3& g, const Vec3& x,
                           const Vec3& y);

struct CorollaryResult {
  double angle;       // between x and qx, via cos = g(x,qx)/g(x,x)
  double mu_direct;   // sectional curvature of {x, qx} from the forced tensor
  double mu_formula;  // -(tau0/6) tan^2(angle/2)
  double ricci_det;   // det of the forced Ricci form tau0/6 (2g - f)
};

/// Sectional-curvature cross-check for the 2-section {x, qx}; rejects x
/// parallel to (1,1,1) (where qx is parallel to x).
CorollaryResult corollary_suite(const classv::MetricFrame& frame, double tau0,
                                const Vec3& x);

/// A direction with g(x, qx) = 0: x = (1, 1, z) with
/// B z^2 + 2(A+B) z + A + 3B = 0 (the root with smaller magnitude).
Vec3 orthogonal_q_direction(const classv::MetricFrame& frame);

/// Normalized size of an assembled curvature tensor relative to the
/// magnitudes it is built from; used for flatness decisions.
double normalized_curvature_magnitude(const Connection& c,
                                      const tensor3::Rank4& R);

/// max-norm difference normalized by 1 + the larger max-norm.
double normalized_defect(const tensor3::Rank4& a, const tensor3::Rank4& b);
double normalized_defect(const tensor3::Rank3& a, const tensor3::Rank3& b);

/// First Bianchi residual max |R^h_{ijk} + R^h_{jki} + R^h_{kij}|,
/// normalized by max|R| + 1e-30.
double first_bianchi_defect(const tensor3::Rank4& mixed);

}  // namespace circv::curvature
