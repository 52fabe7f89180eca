#include "circv/curvature/connection.hpp"

#include <cmath>

#include "circv/errors.hpp"

namespace circv::curvature {

using classv::MetricFrame;
using tensor3::Rank3;
using tensor3::SymMat3;

Connection christoffel(const MetricFrame& fr, MetricTag tag) {
  const SymMat3* m = &fr.g;
  const std::array<SymMat3, 3>* dm = &fr.dg;
  const std::array<std::array<SymMat3, 3>, 3>* d2m = &fr.d2g;
  if (tag == MetricTag::GBar) {
    if (!fr.gbar) {
      throw ScenarioError("scenario has no deformed metric (alpha/beta absent)");
    }
    m = &*fr.gbar;
    dm = &*fr.dgbar;
    d2m = &*fr.d2gbar;
  }

  Connection c;
  c.tag = tag;
  c.metric = *m;
  c.metric_inv = tensor3::invert(*m);
  c.dmetric = *dm;

  const SymMat3& inv = c.metric_inv;
  for (int s = 0; s < 3; ++s)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) {
        double sum = 0.0;
        for (int a = 0; a < 3; ++a) {
          sum += inv(s, a) *
                 ((*dm)[k](i, a) + (*dm)[i](k, a) - (*dm)[a](k, i));
        }
        c.gamma(s, k, i) = 0.5 * sum;
      }

  // d(g^{-1}) = -g^{-1} (dg) g^{-1}
  std::array<Mat3, 3> dinv;
  for (int p = 0; p < 3; ++p) {
    dinv[p] = -inv.mat() * (*dm)[p].mat() * inv.mat();
  }

  for (int p = 0; p < 3; ++p) {
    for (int s = 0; s < 3; ++s)
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) {
          double sum = 0.0;
          for (int a = 0; a < 3; ++a) {
            sum += dinv[p](s, a) *
                       ((*dm)[k](i, a) + (*dm)[i](k, a) - (*dm)[a](k, i)) +
                   inv(s, a) * ((*d2m)[p][k](i, a) + (*d2m)[p][i](k, a) -
                                (*d2m)[p][a](k, i));
          }
          c.dgamma[p](s, k, i) = 0.5 * sum;
        }
  }
  return c;
}

double metric_compat_defect(const Connection& c) {
  double worst = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double v = c.dmetric[k](i, j);
        for (int a = 0; a < 3; ++a) {
          v -= c.gamma(a, k, i) * c.metric(a, j) +
               c.gamma(a, k, j) * c.metric(a, i);
        }
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

tensor3::Rank3 covariant_derivative_affinor(const Connection& c,
                                            const Mat3& M) {
  Rank3 out;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double v = 0.0;
        for (int a = 0; a < 3; ++a) {
          v += c.gamma(k, i, a) * M(j, a) - c.gamma(a, i, j) * M(a, k);
        }
        out(k, i, j) = v;
      }
  return out;
}

Theorem1Report theorem1_check(const classv::MetricFrame& fr) {
  if (!fr.alpha || !fr.beta) {
    throw ScenarioError("theorem1_check needs both alpha and beta");
  }
  Theorem1Report rep{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    double rhs = 0.0;
    for (int j = 0; j < 3; ++j) rhs += fr.S(i, j) * fr.beta->grad()[j];
    rep.condition_defect =
        std::max(rep.condition_defect, std::abs(fr.alpha->grad()[i] - rhs));
  }
  const Connection bar = christoffel(fr, MetricTag::GBar);
  rep.nabla_bar_q_defect = covariant_derivative_affinor(bar, fr.q).max_abs();
  return rep;
}

}  // namespace circv::curvature
