#include "circv/curvature/deformation.hpp"

#include <cmath>

#include "circv/errors.hpp"

namespace circv::curvature {

using classv::MetricFrame;
using tensor3::Rank3;
using tensor3::Rank4;
using tensor3::SymMat3;
using tensor3::Variance;

namespace {

void require_pure_beta_f(const MetricFrame& fr) {
  if (!fr.beta || !fr.pure_beta_f) {
    throw ScenarioError(
        "this operation needs a scenario with gbar = beta f (beta present, "
        "alpha absent)");
  }
  if (fr.beta->value() == 0) {
    throw ScenarioError("beta vanishes at the point");
  }
}

double norm_mat_defect(const Mat3& x, const Mat3& y) {
  const double dx = (x - y).cwiseAbs().maxCoeff();
  return dx / (1.0 + std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff()));
}

double norm_scalar_defect(double x, double y) {
  return std::abs(x - y) / (1.0 + std::max(std::abs(x), std::abs(y)));
}

}  // namespace

Rank3 deformation_direct(const MetricFrame& fr) {
  require_pure_beta_f(fr);
  const Connection base = christoffel(fr, MetricTag::G);
  const Connection bar = christoffel(fr, MetricTag::GBar);
  return bar.gamma - base.gamma;
}

Rank3 assemble_deformation(const MetricFrame& fr, const Vec3& bl) {
  // beta^a S_a^s, raised with g
  Vec3 bu;
  for (int a = 0; a < 3; ++a) {
    bu[a] = 0.0;
    for (int b = 0; b < 3; ++b) bu[a] += fr.g_inv(a, b) * bl[b];
  }
  Vec3 w;
  for (int s = 0; s < 3; ++s) {
    w[s] = 0.0;
    for (int a = 0; a < 3; ++a) w[s] += bu[a] * fr.S(a, s);
  }
  Rank3 T;
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) {
        T(s, i, k) = bl[k] * (s == i) + bl[i] * (s == k) -
                     0.5 * w[s] * fr.f(i, k);
      }
  return T;
}

DeformationData deformation_formula(const MetricFrame& fr) {
  require_pure_beta_f(fr);
  const auto& bjet = *fr.beta;
  const double b = bjet.value();

  DeformationData d;
  d.beta_lower = bjet.grad() / (2 * b);
  for (int a = 0; a < 3; ++a) {
    d.beta_upper[a] = 0.0;
    for (int c = 0; c < 3; ++c) d.beta_upper[a] += fr.g_inv(a, c) * d.beta_lower[c];
  }

  // partial of the normalized covector:
  // d_j (d_k beta / (2 beta)) = hess_jk/(2 beta) - 2 beta_j beta_k
  for (int j = 0; j < 3; ++j)
    for (int k = j; k < 3; ++k) {
      d.dbeta_lower.at(j, k) =
          bjet.hess(j, k) / (2 * b) - 2 * d.beta_lower[j] * d.beta_lower[k];
    }

  const Connection base = christoffel(fr, MetricTag::G);
  for (int k = 0; k < 3; ++k)
    for (int i = k; i < 3; ++i) {
      double v = d.dbeta_lower(k, i);
      for (int a = 0; a < 3; ++a) v -= base.gamma(a, k, i) * d.beta_lower[a];
      d.nabla_beta.at(k, i) = v;
    }

  d.phi = 0.0;
  for (int t = 0; t < 3; ++t)
    for (int s = 0; s < 3; ++s) {
      d.phi += 0.5 * d.beta_upper[t] * fr.S(t, s) * d.beta_lower[s];
    }

  // psi = 1/2 S_t^h nabla_h beta^t with nabla_h beta^t = g^{ta} nabla_h beta_a
  d.psi = 0.0;
  for (int t = 0; t < 3; ++t)
    for (int h = 0; h < 3; ++h) {
      double nb_up = 0.0;
      for (int a = 0; a < 3; ++a) nb_up += fr.g_inv(t, a) * d.nabla_beta(h, a);
      d.psi += 0.5 * fr.S(t, h) * nb_up;
    }

  d.T = assemble_deformation(fr, d.beta_lower);
  return d;
}

TransferResult transfer_rhs(const MetricFrame& fr) {
  require_pure_beta_f(fr);
  const Connection base = christoffel(fr, MetricTag::G);
  const Rank4 R = riemann(base);
  const DeformationData d = deformation_formula(fr);
  const Vec3& bl = d.beta_lower;
  const Vec3& bu = d.beta_upper;

  // --- general transfer relation: R + nabla_j T - nabla_k T + T T - T T ---
  // partial of T needs the partials of beta_upper and of w^s = beta^a S_a^s.
  std::array<Mat3, 3> dginv;
  for (int p = 0; p < 3; ++p) {
    dginv[p] = -fr.g_inv.mat() * fr.dg[p].mat() * fr.g_inv.mat();
  }
  Mat3 dbu;  // dbu(j, a) = partial_j beta^a
  for (int j = 0; j < 3; ++j)
    for (int a = 0; a < 3; ++a) {
      double v = 0.0;
      for (int c = 0; c < 3; ++c) {
        v += dginv[j](a, c) * bl[c] + fr.g_inv(a, c) * d.dbeta_lower(j, c);
      }
      dbu(j, a) = v;
    }
  Vec3 w;
  Mat3 dw;  // dw(j, s) = partial_j w^s
  for (int s = 0; s < 3; ++s) {
    w[s] = 0.0;
    for (int a = 0; a < 3; ++a) w[s] += bu[a] * fr.S(a, s);
    for (int j = 0; j < 3; ++j) {
      double v = 0.0;
      for (int a = 0; a < 3; ++a) v += dbu(j, a) * fr.S(a, s);
      dw(j, s) = v;
    }
  }

  std::array<Rank3, 3> dT;  // dT[j](s, i, k) = partial_j T^s_{ik}
  for (int j = 0; j < 3; ++j)
    for (int s = 0; s < 3; ++s)
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
          dT[j](s, i, k) = d.dbeta_lower(j, k) * (s == i) +
                           d.dbeta_lower(j, i) * (s == k) -
                           0.5 * dw(j, s) * fr.f(i, k) -
                           0.5 * w[s] * fr.df[j](i, k);
        }

  // nabla_j T^h_{ik} = dT + Gamma^h_{ja} T^a_{ik} - Gamma^a_{ji} T^h_{ak}
  //                       - Gamma^a_{jk} T^h_{ia}
  std::array<Rank3, 3> nT;
  for (int j = 0; j < 3; ++j)
    for (int h = 0; h < 3; ++h)
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
          double v = dT[j](h, i, k);
          for (int a = 0; a < 3; ++a) {
            v += base.gamma(h, j, a) * d.T(a, i, k) -
                 base.gamma(a, j, i) * d.T(h, a, k) -
                 base.gamma(a, j, k) * d.T(h, i, a);
          }
          nT[j](h, i, k) = v;
        }

  TransferResult res;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double v = R(h, i, j, k) + nT[j](h, i, k) - nT[k](h, i, j);
          for (int s = 0; s < 3; ++s) {
            v += d.T(s, i, k) * d.T(h, s, j) - d.T(s, i, j) * d.T(h, s, k);
          }
          res.general_form(h, i, j, k) = v;
        }

  // --- closed class-V form -------------------------------------------------
  // P_ij = nabla_j beta_i - beta_i beta_j + phi f_ij (symmetric);
  // M_k^h = S_t^h (nabla_k beta^t - beta_k beta^t).
  SymMat3 P;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      P.at(i, j) = d.nabla_beta(i, j) - bl[i] * bl[j] + d.phi * fr.f(i, j);
    }
  Mat3 M;
  for (int k = 0; k < 3; ++k)
    for (int h = 0; h < 3; ++h) {
      double v = 0.0;
      for (int t = 0; t < 3; ++t) {
        double nb_up = 0.0;
        for (int a = 0; a < 3; ++a) nb_up += fr.g_inv(t, a) * d.nabla_beta(k, a);
        v += fr.S(t, h) * (nb_up - bl[k] * bu[t]);
      }
      M(k, h) = v;
    }

  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          res.classv_form(h, i, j, k) = R(h, i, j, k) + (k == h) * P(i, j) -
                                        (j == h) * P(i, k) +
                                        0.5 * fr.f(i, j) * M(k, h) -
                                        0.5 * fr.f(i, k) * M(j, h);
        }

  res.mutual_defect = normalized_defect(res.general_form, res.classv_form);
  return res;
}

namespace {

/// Shared tail of the theorem chain: every identity that only involves the
/// curvature data (Ricci, tau, tau*) and the frame.
void append_chain_tail(DefectList& out, const MetricFrame& fr,
                       const SymMat3& ricci, double tau, double tau_star,
                       const Rank4& R_lower) {
  const Mat3 I = Mat3::Identity();
  const Mat3 Ric = ricci.mat();
  const Mat3 Finv = fr.f_inv.mat();
  const Mat3 Ginv = fr.g_inv.mat();
  const Mat3 F = fr.f.mat();
  const Mat3 G = fr.g.mat();

  const Mat3 ric_mixed = Ric * Ginv;       // R_k^h = R_ka g^{ah}
  const Mat3 ric_fraised = Ric * Finv;     // R_ka f^{ah}

  out.emplace_back("eq24_mixed_ricci",
                   norm_mat_defect(2.0 * ric_mixed,
                                   tau * I + 0.5 * tau_star * fr.Phi -
                                       fr.Phi * ric_fraised));
  out.emplace_back(
      "eq27_phi_ricci",
      norm_mat_defect(fr.Phi * Ric,
                      ((0.5 * tau_star + tau) * F + tau_star * G) / 3.0));
  // f-raised form of the previous identity, via g_ji f^is = S_j^s / 2
  out.emplace_back(
      "eq28_f_raised",
      norm_mat_defect(fr.Phi * Ric * Finv,
                      ((0.5 * tau_star + tau) * I + 0.5 * tau_star * fr.S) /
                          3.0));
  out.emplace_back(
      "eq30_ricci_mixed_form",
      norm_mat_defect(ric_mixed, tau / 3.0 * I + tau_star / 6.0 * fr.Phi));
  out.emplace_back("tau_star_plus_tau", norm_scalar_defect(tau_star, -tau));
  out.emplace_back(
      "eq33_ricci_form",
      norm_mat_defect(Ric, tau / 6.0 * (2.0 * G - F)));
  out.emplace_back(
      "eq18_reconstruction",
      normalized_defect(R_lower, theorem18_curvature(tau, fr)));
}

Rank4 assemble_eq19(const MetricFrame& fr, const SymMat3& P, const Mat3& Q) {
  Rank4 A(Variance::Mixed);
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          A(h, i, j, k) = (j == h) * P(k, i) - (k == h) * P(i, j) -
                          fr.f(i, j) * Q(k, h) + fr.f(i, k) * Q(j, h);
        }
  return A;
}

}  // namespace

DefectList theorem2_chain_scenario(const MetricFrame& fr, double flatness_tol) {
  require_pure_beta_f(fr);

  const Connection bar = christoffel(fr, MetricTag::GBar);
  const Rank4 R_bar = riemann(bar);
  const double flatness = normalized_curvature_magnitude(bar, R_bar);
  if (!(flatness < flatness_tol)) {
    throw PremiseError(
        "premise not satisfied: the deformed metric is not flat at this "
        "point (normalized |R| = " +
        std::to_string(flatness) + ")");
  }

  const Connection base = christoffel(fr, MetricTag::G);
  const Rank4 R = riemann(base);
  const CurvatureReport rep = ricci_and_scalars(R, fr);
  const DeformationData d = deformation_formula(fr);

  SymMat3 P;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      P.at(i, j) = d.nabla_beta(i, j) - d.beta_lower[i] * d.beta_lower[j] +
                   d.phi * fr.f(i, j);
    }
  Mat3 Q;
  for (int k = 0; k < 3; ++k)
    for (int h = 0; h < 3; ++h) {
      double v = 0.0;
      for (int t = 0; t < 3; ++t) {
        double nb_up = 0.0;
        for (int a = 0; a < 3; ++a) nb_up += fr.g_inv(t, a) * d.nabla_beta(k, a);
        v += 0.5 * fr.S(t, h) * (nb_up - d.beta_lower[k] * d.beta_upper[t]);
      }
      Q(k, h) = v;
    }

  DefectList out;
  out.emplace_back("eq19_curvature_assembly",
                   normalized_defect(rep.R_mixed, assemble_eq19(fr, P, Q)));
  out.emplace_back("eq20_ricci_form",
                   norm_mat_defect(rep.ricci.mat(),
                                   -(P.mat() + d.psi * fr.f.mat())));
  out.emplace_back("eq21_tau_star",
                   norm_scalar_defect(rep.tau_star, -2 * d.phi - 4 * d.psi));
  out.emplace_back(
      "eq22_q_form",
      norm_mat_defect(Q, -rep.ricci.mat() * fr.f_inv.mat() -
                             (d.psi + d.phi) * Mat3::Identity()));
  append_chain_tail(out, fr, rep.ricci, rep.tau, rep.tau_star, rep.R_lower);
  return out;
}

DefectList theorem2_chain_synthetic(double tau0, const MetricFrame& fr) {
  const Rank4 R_lower = theorem18_curvature(tau0, fr);
  const Rank4 R_mixed = tensor3::raise_riemann(R_lower, fr.g_inv);
  const CurvatureReport rep = ricci_and_scalars(R_mixed, fr);

  // Canonical scalar split: phi = psi = tau0/6 satisfies
  // tau* = -2 phi - 4 psi with the forced tau* = -tau0.
  const double phi = tau0 / 6.0;
  const double psi = tau0 / 6.0;
  const SymMat3 ricci_forced = tau0 / 6.0 * (2.0 * fr.g - fr.f);
  const SymMat3 P = -1.0 * (ricci_forced + psi * fr.f);
  const Mat3 Q = -ricci_forced.mat() * fr.f_inv.mat() -
                 (psi + phi) * Mat3::Identity();

  DefectList out;
  out.emplace_back("symmetry_gate", tensor3::symmetry_defects(R_lower).max());
  out.emplace_back("eq20_ricci_form",
                   norm_mat_defect(rep.ricci.mat(),
                                   -(P.mat() + psi * fr.f.mat())));
  out.emplace_back("eq21_tau_star",
                   norm_scalar_defect(rep.tau_star, -2 * phi - 4 * psi));
  out.emplace_back(
      "eq22_q_form",
      norm_mat_defect(Q, -rep.ricci.mat() * fr.f_inv.mat() -
                             (psi + phi) * Mat3::Identity()));
  append_chain_tail(out, fr, rep.ricci, rep.tau, rep.tau_star, rep.R_lower);
  out.emplace_back("tau_recomputed", norm_scalar_defect(rep.tau, tau0));
  return out;
}

}  // namespace circv::curvature
