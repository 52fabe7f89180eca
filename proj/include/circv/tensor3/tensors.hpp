#pragma once

#include <array>
#include <cmath>

#include "circv/tensor3/symmat3.hpp"
#include "circv/types.hpp"

namespace circv::tensor3 {

/// Rank-3 tensor T^s_{ik}: one upper index, two lower.
class Rank3 {
public:
  double& operator()(int up, int lo1, int lo2) {
    return v_[(up * 3 + lo1) * 3 + lo2];
  }
  double operator()(int up, int lo1, int lo2) const {
    return v_[(up * 3 + lo1) * 3 + lo2];
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  friend Rank3 operator+(const Rank3& a, const Rank3& b) {
    Rank3 r;
    for (int i = 0; i < 27; ++i) r.v_[i] = a.v_[i] + b.v_[i];
    return r;
  }
  friend Rank3 operator-(const Rank3& a, const Rank3& b) {
    Rank3 r;
    for (int i = 0; i < 27; ++i) r.v_[i] = a.v_[i] - b.v_[i];
    return r;
  }

private:
  std::array<double, 27> v_{};
};

enum class Variance { Mixed, Lower };  // R^h_{ijk} vs R_{hijk}

/// Rank-4 tensor with an explicit variance flag. Mixed entries are read as
/// R^h_{ijk} (first index up), all-lower as R_{hijk}.
class Rank4 {
public:
  explicit Rank4(Variance v = Variance::Mixed) : var_(v) {}

  Variance variance() const { return var_; }

  double& operator()(int a, int b, int c, int d) {
    return v_[((a * 3 + b) * 3 + c) * 3 + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return v_[((a * 3 + b) * 3 + c) * 3 + d];
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  friend Rank4 operator-(const Rank4& a, const Rank4& b) {
    Rank4 r(a.var_);
    for (int i = 0; i < 81; ++i) r.v_[i] = a.v_[i] - b.v_[i];
    return r;
  }

private:
  std::array<double, 81> v_{};
  Variance var_;
};

/// R_{hijk} = g_{ha} R^a_{ijk}.
inline Rank4 lower_riemann(const Rank4& r, const SymMat3& g) {
  if (r.variance() != Variance::Mixed) {
    throw VarianceError("lower_riemann expects a mixed-variance tensor");
  }
  Rank4 out(Variance::Lower);
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double s = 0.0;
          for (int a = 0; a < 3; ++a) s += g(h, a) * r(a, i, j, k);
          out(h, i, j, k) = s;
        }
  return out;
}

/// R^h_{ijk} = g^{ha} R_{aijk}.
inline Rank4 raise_riemann(const Rank4& r, const SymMat3& g_inv) {
  if (r.variance() != Variance::Lower) {
    throw VarianceError("raise_riemann expects an all-lower tensor");
  }
  Rank4 out(Variance::Mixed);
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double s = 0.0;
          for (int a = 0; a < 3; ++a) s += g_inv(h, a) * r(a, i, j, k);
          out(h, i, j, k) = s;
        }
  return out;
}

/// Deviations of an all-lower tensor from the three algebraic symmetries of
/// a curvature tensor, measured as the max-norm distance to the symmetric/
/// antisymmetric part and normalized by max|R| + 1e-30 (scale free; a lone
/// unit entry scores exactly 1 on the antisymmetry defects).
struct SymmetryDefects {
  double antisym_first_pair;  // R_{hijk} vs -R_{ihjk}
  double antisym_last_pair;   // R_{hijk} vs -R_{hikj}
  double pair_sym;            // R_{hijk} vs  R_{jkhi}

  double max() const {
    return std::max(antisym_first_pair, std::max(antisym_last_pair, pair_sym));
  }
};

inline SymmetryDefects symmetry_defects(const Rank4& r) {
  if (r.variance() != Variance::Lower) {
    throw VarianceError("symmetry_defects expects an all-lower tensor");
  }
  const double norm = r.max_abs() + 1e-30;
  SymmetryDefects d{0.0, 0.0, 0.0};
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          d.antisym_first_pair = std::max(
              d.antisym_first_pair,
              0.5 * std::abs(r(h, i, j, k) + r(i, h, j, k)));
          d.antisym_last_pair = std::max(
              d.antisym_last_pair,
              0.5 * std::abs(r(h, i, j, k) + r(h, i, k, j)));
          d.pair_sym = std::max(d.pair_sym,
                                0.5 * std::abs(r(h, i, j, k) - r(j, k, h, i)));
        }
  d.antisym_first_pair /= norm;
  d.antisym_last_pair /= norm;
  d.pair_sym /= norm;
  return d;
}

/// R(x, y, z, u) = R_{hijk} x^h y^i z^j u^k.
inline double contract4(const Rank4& r, const Vec3& x, const Vec3& y,
                        const Vec3& z, const Vec3& u) {
  if (r.variance() != Variance::Lower) {
    throw VarianceError("contract4 expects an all-lower tensor");
  }
  double s = 0.0;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          s += r(h, i, j, k) * x[h] * y[i] * z[j] * u[k];
  return s;
}

}  // namespace circv::tensor3
