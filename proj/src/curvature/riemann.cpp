#include "circv/curvature/riemann.hpp"

#include <cmath>

#include "circv/errors.hpp"

namespace circv::curvature {

using classv::MetricFrame;
using tensor3::Rank4;
using tensor3::SymMat3;
using tensor3::Variance;

Rank4 riemann(const Connection& c) {
  Rank4 r(Variance::Mixed);
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double v = c.dgamma[j](h, i, k) - c.dgamma[k](h, i, j);
          for (int s = 0; s < 3; ++s) {
            v += c.gamma(s, i, k) * c.gamma(h, s, j) -
                 c.gamma(s, i, j) * c.gamma(h, s, k);
          }
          r(h, i, j, k) = v;
        }
  return r;
}

CurvatureReport ricci_and_scalars(const Rank4& mixed, const MetricFrame& fr) {
  if (mixed.variance() != Variance::Mixed) {
    throw VarianceError("ricci_and_scalars expects a mixed-variance tensor");
  }
  CurvatureReport rep;
  rep.R_mixed = mixed;
  rep.R_lower = tensor3::lower_riemann(mixed, fr.g);

  // R_ij = R^k_{ijk}
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += mixed(k, i, j, k);
      rep.ricci.at(i, j) = s;
    }

  rep.tau = 0.0;
  rep.tau_star = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      rep.tau += rep.ricci(i, j) * fr.g_inv(i, j);
      rep.tau_star += rep.ricci(i, j) * fr.f_inv(i, j);
    }
  return rep;
}

Rank4 theorem18_curvature(double tau0, const MetricFrame& fr) {
  Rank4 r(Variance::Lower);
  const SymMat3 &g = fr.g, &f = fr.f;
  const double c = tau0 / 6.0;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          r(h, i, j, k) = c * (2 * g(k, h) * g(i, j) - 2 * g(h, j) * g(k, i) +
                               f(k, h) * f(i, j) - f(h, j) * f(k, i));
        }
  return r;
}

double sectional_curvature(const Rank4& lower, const SymMat3& g, const Vec3& x,
                           const Vec3& y) {
  if (lower.variance() != Variance::Lower) {
    throw VarianceError("sectional_curvature expects an all-lower tensor");
  }
  const double gxx = g.quad(x, x);
  const double gyy = g.quad(y, y);
  const double gxy = g.quad(x, y);
  const double denom = gxx * gyy - gxy * gxy;
  const double scale = std::abs(gxx * gyy) + gxy * gxy;
  if (!(std::abs(denom) > 1e-12 * scale)) {
    throw DegeneratePlaneError(
        "the two vectors do not span a non-degenerate 2-plane");
  }
  return tensor3::contract4(lower, x, y, x, y) / denom;
}

CorollaryResult corollary_suite(const MetricFrame& fr, double tau0,
                                const Vec3& x) {
  const double s = x.sum();
  const Vec3 deviation = x - (s / 3.0) * Vec3::Ones();
  if (x.norm() == 0 || deviation.norm() <= 1e-12 * x.norm()) {
    throw DegeneratePlaneError(
        "x is (nearly) parallel to (1,1,1); qx spans no 2-plane with x");
  }

  const Vec3 qx = classv::apply_affinor(fr.q, x);
  CorollaryResult res;
  // g(qx,qx) = g(x,x), so the angle needs a single quotient.
  double cosv = fr.g.quad(x, qx) / fr.g.quad(x, x);
  cosv = std::min(1.0, std::max(-1.0, cosv));
  res.angle = std::acos(cosv);

  const Rank4 r18 = theorem18_curvature(tau0, fr);
  res.mu_direct = sectional_curvature(r18, fr.g, x, qx);
  const double t = std::tan(res.angle / 2);
  res.mu_formula = -(tau0 / 6.0) * t * t;

  const SymMat3 ricci_form = (tau0 / 6.0) * (2.0 * fr.g - fr.f);
  res.ricci_det = ricci_form.det();
  return res;
}

Vec3 orthogonal_q_direction(const MetricFrame& fr) {
  const double a = fr.A.value();
  const double b = fr.B.value();
  // g(x, qx) = 0 for x = (1, 1, z):  B z^2 + 2(A+B) z + (A + 3B) = 0.
  // The discriminant 4 (A-B)(A+2B) is positive whenever A > B > 0.
  const double disc = (a - b) * (a + 2 * b);
  const double z = (-(a + b) + std::sqrt(disc)) / b;
  return Vec3(1.0, 1.0, z);
}

double normalized_curvature_magnitude(const Connection& c, const Rank4& R) {
  double gmax = c.gamma.max_abs();
  double dgmax = 0.0;
  for (const auto& d : c.dgamma) dgmax = std::max(dgmax, d.max_abs());
  return R.max_abs() / (1.0 + dgmax + gmax * gmax);
}

double normalized_defect(const Rank4& a, const Rank4& b) {
  return (a - b).max_abs() / (1.0 + std::max(a.max_abs(), b.max_abs()));
}

double normalized_defect(const tensor3::Rank3& a, const tensor3::Rank3& b) {
  return (a - b).max_abs() / (1.0 + std::max(a.max_abs(), b.max_abs()));
}

double first_bianchi_defect(const Rank4& mixed) {
  if (mixed.variance() != Variance::Mixed) {
    throw VarianceError("first_bianchi_defect expects a mixed tensor");
  }
  double worst = 0.0;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          worst = std::max(worst,
                           std::abs(mixed(h, i, j, k) + mixed(h, j, k, i) +
                                    mixed(h, k, i, j)));
        }
  return worst / (mixed.max_abs() + 1e-30);
}

}  // namespace circv::curvature
