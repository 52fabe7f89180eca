#include "circv/classv/frame.hpp"

#include <cmath>

#include "circv/errors.hpp"
#include "circv/fieldexpr/eval.hpp"

namespace circv::classv {

using fieldexpr::Jet2;
using tensor3::SymMat3;

double defect_of(const DefectList& list, const std::string& key) {
  for (const auto& [k, v] : list) {
    if (k == key) return v;
  }
  throw Error("no defect entry named '" + key + "'");
}

StructureAffinors structure_affinors() {
  StructureAffinors a;
  a.q << 0, 1, 0,
         0, 0, 1,
         1, 0, 0;
  a.q_tilde = a.q * a.q;  // q~_j^s = q_a^s q_j^a
  a.Phi = a.q + a.q_tilde;
  a.S = a.Phi - Mat3::Identity();
  return a;
}

namespace {

SymMat3 circ_of(double diag_val, double off_val) {
  return tensor3::circulant(diag_val, off_val);
}

}  // namespace

MetricFrame metrics_at(const Scenario& s, const Point& p) {
  if (!p.allFinite()) throw GuardError("point has non-finite coordinates");
  if (!s.domain.contains(p)) {
    throw GuardError("point is outside the scenario domain box");
  }
  for (std::size_t i = 0; i < s.guards.size(); ++i) {
    const double v = fieldexpr::eval_value(s.guards[i], p);
    if (!(v > s.guard_margin)) {
      throw GuardError("guard " + std::to_string(i) + " ('" +
                       s.guards[i].source() + "') = " + std::to_string(v) +
                       " does not exceed the margin " +
                       std::to_string(s.guard_margin));
    }
  }

  MetricFrame fr;
  fr.point = p;
  fr.A = fieldexpr::eval_jet2(s.A, p);
  fr.B = fieldexpr::eval_jet2(s.B, p);
  if (!(fr.A.value() > fr.B.value() && fr.B.value() > 0)) {
    throw OrderingError("metric ordering A > B > 0 fails at the point (A = " +
                        std::to_string(fr.A.value()) +
                        ", B = " + std::to_string(fr.B.value()) + ")");
  }

  const auto aff = structure_affinors();
  fr.q = aff.q;
  fr.q_tilde = aff.q_tilde;
  fr.S = aff.S;
  fr.Phi = aff.Phi;

  const Jet2 &A = fr.A, &B = fr.B;
  fr.g = circ_of(A.value(), B.value());
  fr.f = circ_of(2 * B.value(), A.value() + B.value());
  fr.g_inv = tensor3::invert(fr.g);
  fr.f_inv = tensor3::invert(fr.f);

  for (int k = 0; k < 3; ++k) {
    fr.dg[k] = circ_of(A.grad()[k], B.grad()[k]);
    fr.df[k] = circ_of(2 * B.grad()[k], A.grad()[k] + B.grad()[k]);
    for (int l = 0; l < 3; ++l) {
      fr.d2g[k][l] = circ_of(A.hess(k, l), B.hess(k, l));
      fr.d2f[k][l] = circ_of(2 * B.hess(k, l), A.hess(k, l) + B.hess(k, l));
    }
  }

  if (s.has_gbar()) {
    const Jet2 a = s.alpha ? fieldexpr::eval_jet2(*s.alpha, p) : Jet2(0.0);
    const Jet2 b = s.beta ? fieldexpr::eval_jet2(*s.beta, p) : Jet2(0.0);
    fr.alpha = s.alpha ? std::optional<Jet2>(a) : std::nullopt;
    fr.beta = s.beta ? std::optional<Jet2>(b) : std::nullopt;
    fr.pure_beta_f = s.pure_beta_f();

    fr.gbar = a.value() * fr.g + b.value() * fr.f;
    std::array<SymMat3, 3> dgbar;
    std::array<std::array<SymMat3, 3>, 3> d2gbar;
    for (int k = 0; k < 3; ++k) {
      dgbar[k] = a.grad()[k] * fr.g + a.value() * fr.dg[k] +
                 b.grad()[k] * fr.f + b.value() * fr.df[k];
    }
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        d2gbar[k][l] = a.hess(k, l) * fr.g + a.grad()[k] * fr.dg[l] +
                       a.grad()[l] * fr.dg[k] + a.value() * fr.d2g[k][l] +
                       b.hess(k, l) * fr.f + b.grad()[k] * fr.df[l] +
                       b.grad()[l] * fr.df[k] + b.value() * fr.d2f[k][l];
      }
    }
    fr.dgbar = dgbar;
    fr.d2gbar = d2gbar;
  }
  return fr;
}

ValidationReport validate_point(const Scenario& s, const Point& p) {
  // Unlike metrics_at, an inverted ordering is reported through the
  // eigenvalue signs here, not thrown; only guard problems are errors.
  if (!p.allFinite() || !s.domain.contains(p)) {
    throw GuardError("point is outside the scenario domain box");
  }
  for (std::size_t i = 0; i < s.guards.size(); ++i) {
    if (!(fieldexpr::eval_value(s.guards[i], p) > s.guard_margin)) {
      throw GuardError("guard " + std::to_string(i) +
                       " does not exceed the margin");
    }
  }
  const Jet2 A = fieldexpr::eval_jet2(s.A, p);
  const Jet2 B = fieldexpr::eval_jet2(s.B, p);
  const Mat3 S = structure_affinors().S;

  ValidationReport rep;
  rep.eig_sum = A.value() + 2 * B.value();
  rep.eig_perp = A.value() - B.value();
  rep.positivity_pass = rep.eig_sum > 0 && rep.eig_perp > 0;

  const auto tol = [&](const std::string& key, double fallback) {
    const auto it = s.tolerances.find(key);
    return it == s.tolerances.end() ? fallback : it->second;
  };

  // grad A = grad B . S, read as d_i A = S_i^j d_j B (S is symmetric).
  double classv = 0.0;
  for (int i = 0; i < 3; ++i) {
    double rhs = 0.0;
    for (int j = 0; j < 3; ++j) rhs += S(i, j) * B.grad()[j];
    classv = std::max(classv, std::abs(A.grad()[i] - rhs));
  }
  rep.classv_defect = classv;
  rep.classv_pass = classv < tol("classv", 1e-10);

  if (s.alpha && s.beta) {
    const Jet2 a = fieldexpr::eval_jet2(*s.alpha, p);
    const Jet2 b = fieldexpr::eval_jet2(*s.beta, p);
    double t1 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double rhs = 0.0;
      for (int j = 0; j < 3; ++j) rhs += S(i, j) * b.grad()[j];
      t1 = std::max(t1, std::abs(a.grad()[i] - rhs));
    }
    rep.theorem1_defect = t1;
    rep.theorem1_pass = t1 < tol("theorem1", 1e-10);
  }
  return rep;
}

DefectList structure_identity_suite(const Scenario& s, const Point& p) {
  return structure_identity_suite(metrics_at(s, p));
}

DefectList structure_identity_suite(const MetricFrame& fr) {
  DefectList out;
  const Mat3 G = fr.g.mat();
  const Mat3 F = fr.f.mat();
  const Mat3 Ginv = fr.g_inv.mat();
  const Mat3 Finv = fr.f_inv.mat();
  const Mat3 I = Mat3::Identity();

  out.emplace_back("q_cubed",
                   (fr.q * fr.q * fr.q - I).cwiseAbs().maxCoeff());

  // g(qu, qv) = g(u, v) on the coordinate basis pairs
  double inv_defect = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 qu = apply_affinor(fr.q, Vec3::Unit(i));
      const Vec3 qv = apply_affinor(fr.q, Vec3::Unit(j));
      inv_defect = std::max(
          inv_defect, std::abs(fr.g.quad(qu, qv) - fr.g.quad(Vec3::Unit(i),
                                                             Vec3::Unit(j))));
    }
  }
  out.emplace_back("metric_q_invariance", inv_defect);

  // Phi_j^s g_is = f_ji   -> (Phi G)(j,i) = F(j,i)
  out.emplace_back("phi_g_is_f", (fr.Phi * G - F).cwiseAbs().maxCoeff());
  // Phi_j^s f_is = 2 g_ji + f_ji
  out.emplace_back("phi_f_is_2g_plus_f",
                   (fr.Phi * F - (2 * G + F)).cwiseAbs().maxCoeff());
  // f_ji g^{is} = Phi_j^s
  out.emplace_back("f_ginv_is_phi", (F * Ginv - fr.Phi).cwiseAbs().maxCoeff());
  // g_ji f^{is} = S_j^s / 2
  out.emplace_back("g_finv_is_half_s",
                   (G * Finv - 0.5 * fr.S).cwiseAbs().maxCoeff());
  out.emplace_back("s_is_phi_minus_e",
                   (fr.S - (fr.Phi - I)).cwiseAbs().maxCoeff());

  // f_ij = g_ik q_j^k + g_jk q_i^k must reproduce circulant(2B, A+B)
  const Mat3 gq = G * fr.q.transpose();
  out.emplace_back("f_matches_circulant",
                   (gq + gq.transpose() - F).cwiseAbs().maxCoeff());
  return out;
}

double det_f_relative_defect(const MetricFrame& fr) {
  const double a = fr.A.value();
  const double b = fr.B.value();
  const double predicted = 2 * (a - b) * (a - b) * (a + 2 * b);
  const double actual = fr.f.det();
  return std::abs(actual - predicted) / (std::abs(predicted) + 1e-30);
}

}  // namespace circv::classv
