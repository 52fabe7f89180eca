#pragma once

#include <array>

#include "circv/classv/frame.hpp"
#include "circv/tensor3/tensors.hpp"

namespace circv::curvature {

enum class MetricTag { G, GBar };

/// Levi-Civita data of one metric at one point: Gamma^s_{ki} and its
/// partials, assembled analytically from the metric jets (no third-order
/// differentiation is ever needed).
struct Connection {
  MetricTag tag = MetricTag::G;
  tensor3::Rank3 gamma;                     // (s, k, i), symmetric in (k, i)
  std::array<tensor3::Rank3, 3> dgamma;     // partial_m Gamma^s_{ki}
  tensor3::SymMat3 metric, metric_inv;
  std::array<tensor3::SymMat3, 3> dmetric;  // partial_k of the metric
};

/// Gamma^s_{ki} = 1/2 g^{sa} (d_k g_{ia} + d_i g_{ka} - d_a g_{ki}), with
/// d Gamma from d2 g and d(g^{-1}) = -g^{-1} (dg) g^{-1}.
/// The deformed metric only has to be invertible (it may be indefinite).
Connection christoffel(const classv::MetricFrame& frame, MetricTag tag);

/// max |d_k m_ij - Gamma^a_{ki} m_aj - Gamma^a_{kj} m_ai| over all indices;
/// zero for the connection's own metric.
double metric_compat_defect(const Connection& c);

/// Covariant derivative of a constant (1,1) tensor field:
/// nabla_i M_j^k = Gamma^k_{ia} M_j^a - Gamma^a_{ij} M_a^k.
/// Returned as Rank3 with (up, lo1, lo2) = (k, i, j).
tensor3::Rank3 covariant_derivative_affinor(const Connection& c, const Mat3& M);

struct Theorem1Report {
  double condition_defect;     // max_i |d_i alpha - S_i^j d_j beta|
  double nabla_bar_q_defect;   // max |nabla-bar q| from the gbar connection
};

/// Both sides of the parallel-q criterion for gbar = alpha g + beta f.
/// The caller decides pass/fail (the two defects must be small together or
/// large together).
Theorem1Report theorem1_check(const classv::MetricFrame& frame);

}  // namespace circv::curvature
