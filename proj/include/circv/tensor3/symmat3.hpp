#pragma once

#include "circv/errors.hpp"
#include "circv/fieldexpr/jet.hpp"
#include "circv/types.hpp"

namespace circv::tensor3 {

using fieldexpr::sym_index;

/// Symmetric 3x3 matrix stored as its 6 independent entries.
class SymMat3 {
public:
  SymMat3() = default;

  static SymMat3 zero() { return SymMat3(); }

  static SymMat3 identity() {
    SymMat3 m;
    m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = 1.0;
    return m;
  }

  /// Reads the upper triangle of an arbitrary (assumed symmetric) matrix.
  static SymMat3 from(const Mat3& m) {
    SymMat3 s;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) s.at(i, j) = m(i, j);
    return s;
  }

  double operator()(int i, int j) const { return c_[sym_index(i, j)]; }
  double& at(int i, int j) { return c_[sym_index(i, j)]; }

  Mat3 mat() const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  /// Quadratic form g(x, y) = g_ij x^i y^j.
  double quad(const Vec3& x, const Vec3& y) const {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += (*this)(i, j) * x[i] * y[j];
    return s;
  }

  double det() const {
    const SymMat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  double max_abs() const { return c_.cwiseAbs().maxCoeff(); }

  friend SymMat3 operator+(const SymMat3& a, const SymMat3& b) {
    SymMat3 r;
    r.c_ = a.c_ + b.c_;
    return r;
  }
  friend SymMat3 operator-(const SymMat3& a, const SymMat3& b) {
    SymMat3 r;
    r.c_ = a.c_ - b.c_;
    return r;
  }
  friend SymMat3 operator*(double s, const SymMat3& a) {
    SymMat3 r;
    r.c_ = s * a.c_;
    return r;
  }
  friend SymMat3 operator-(const SymMat3& a) { return -1.0 * a; }

private:
  Eigen::Matrix<double, 6, 1> c_ = Eigen::Matrix<double, 6, 1>::Zero();
};

/// Circulant symmetric matrix: the given diagonal entry, all off-diagonal
/// entries equal.
inline SymMat3 circulant(double diag, double off) {
  SymMat3 m;
  m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = diag;
  m.at(0, 1) = m.at(0, 2) = m.at(1, 2) = off;
  return m;
}

/// Product of two circulant symmetric matrices, computed in the (diag, off)
/// parametrization. The class is closed under multiplication and the result
/// is independent of the operand order down to the last bit.
inline SymMat3 circulant_product(const SymMat3& a, const SymMat3& b) {
  const double d1 = a(0, 0), o1 = a(0, 1);
  const double d2 = b(0, 0), o2 = b(0, 1);
  return circulant(d1 * d2 + 2 * (o1 * o2), d1 * o2 + o1 * d2 + o1 * o2);
}

/// Closed-form inverse with a scale-aware singularity gate:
/// requires |det| > 1e-12 * max|entry|^3.
inline SymMat3 invert(const SymMat3& m) {
  const double d = m.det();
  const double scale = m.max_abs();
  if (!(std::abs(d) > 1e-12 * scale * scale * scale)) {
    throw SingularMatrixError(d);
  }
  const double inv = 1.0 / d;
  SymMat3 r;
  r.at(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2)) * inv;
  r.at(0, 1) = (m(0, 2) * m(1, 2) - m(0, 1) * m(2, 2)) * inv;
  r.at(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) * inv;
  r.at(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(0, 2)) * inv;
  r.at(1, 2) = (m(0, 1) * m(0, 2) - m(0, 0) * m(1, 2)) * inv;
  r.at(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1)) * inv;
  return r;
}

}  // namespace circv::tensor3
