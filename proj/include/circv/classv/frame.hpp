#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circv/classv/scenario.hpp"
#include "circv/fieldexpr/jet.hpp"
#include "circv/tensor3/symmat3.hpp"
#include "circv/types.hpp"

namespace circv::classv {

/// Named defects in a deterministic order.
using DefectList = std::vector<std::pair<std::string, double>>;

double defect_of(const DefectList& list, const std::string& key);

/// The four constant affinors. Matrices are stored as printed: entry (i, j)
/// is the component with lower index i and upper index j, so the action on
/// a vector is (q x)^k = q_j^k x^j = (q^T x)_k.
struct StructureAffinors {
  Mat3 q, q_tilde, S, Phi;
};

StructureAffinors structure_affinors();

/// Applies an affinor to a vector: (M x)^k = M_j^k x^j.
inline Vec3 apply_affinor(const Mat3& m, const Vec3& x) {
  return m.transpose() * x;
}

/// Everything pointwise: metrics, their inverses, the affinors, and the
/// first/second derivatives of every metric entry (from the jets of the
/// generating scalars).
struct MetricFrame {
  Point point = Point::Zero();
  fieldexpr::Jet2 A, B;
  std::optional<fieldexpr::Jet2> alpha, beta;

  tensor3::SymMat3 g, f;
  tensor3::SymMat3 g_inv, f_inv;
  std::optional<tensor3::SymMat3> gbar;

  Mat3 q, q_tilde, S, Phi;

  std::array<tensor3::SymMat3, 3> dg, df;               // partial_k
  std::array<std::array<tensor3::SymMat3, 3>, 3> d2g, d2f;  // partial_k partial_l
  std::optional<std::array<tensor3::SymMat3, 3>> dgbar;
  std::optional<std::array<std::array<tensor3::SymMat3, 3>, 3>> d2gbar;

  bool pure_beta_f = false;
};

/// Builds the frame at p. Checks the domain box, the guards and the
/// ordering A > B > 0; throws GuardError / OrderingError /
/// SingularMatrixError accordingly.
MetricFrame metrics_at(const Scenario& s, const Point& p);

struct ValidationReport {
  double eig_sum;        // A + 2B, the (1,1,1)-eigenvalue of g
  double eig_perp;       // A - B, the double eigenvalue
  bool positivity_pass;  // both eigenvalues positive
  double classv_defect;  // max_i |d_i A - S_i^j d_j B|
  bool classv_pass;
  std::optional<double> theorem1_defect;  // max_i |d_i alpha - S_i^j d_j beta|
  std::optional<bool> theorem1_pass;
};

ValidationReport validate_point(const Scenario& s, const Point& p);

/// Pointwise algebraic identities tying g, f and the affinors together.
/// Keys: q_cubed, metric_q_invariance, phi_g_is_f, phi_f_is_2g_plus_f,
/// f_ginv_is_phi, g_finv_is_half_s, s_is_phi_minus_e, f_matches_circulant.
DefectList structure_identity_suite(const Scenario& s, const Point& p);
DefectList structure_identity_suite(const MetricFrame& frame);

/// Relative defect of det f against 2 (A-B)^2 (A+2B).
double det_f_relative_defect(const MetricFrame& frame);

}  // namespace circv::classv
