#pragma once

#include <cmath>

#include "circv/types.hpp"

namespace circv::fieldexpr {

/// Packed index of the symmetric 3x3 entry (i, j), i <= j:
/// (0,0) (0,1) (0,2) (1,1) (1,2) (2,2) -> 0..5.
constexpr int sym_index(int i, int j) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return i * (5 - i) / 2 + j;
}

using PackedSym = Eigen::Matrix<double, 6, 1>;

/// packed(i,j) = a_i b_j + a_j b_i  (product-rule cross term)
inline PackedSym sym_cross(const Vec3& a, const Vec3& b) {
  PackedSym p;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) p[sym_index(i, j)] = a[i] * b[j] + a[j] * b[i];
  return p;
}

/// packed(i,j) = a_i a_j  (chain-rule outer term)
inline PackedSym sym_outer(const Vec3& a) {
  PackedSym p;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) p[sym_index(i, j)] = a[i] * a[j];
  return p;
}

/// Second-order forward jet over R^3: value, gradient and Hessian of a
/// scalar field at a point, closed under arithmetic and composition.
/// The Hessian is stored as its 6 independent entries, so it is symmetric
/// by construction, and a constant jet has exactly zero derivatives.
class Jet2 {
public:
  Jet2() = default;
  explicit Jet2(double c) : v_(c) {}

  static Jet2 variable(int axis, double x) {
    Jet2 j(x);
    j.g_[axis] = 1.0;
    return j;
  }

  /// Builds a jet from explicit slots; only the upper triangle of `hess`
  /// is read, so the stored Hessian is symmetric regardless of the input.
  static Jet2 from_parts(double value, const Vec3& grad, const Mat3& hess) {
    Jet2 j(value);
    j.g_ = grad;
    for (int i = 0; i < 3; ++i)
      for (int k = i; k < 3; ++k) j.h_[sym_index(i, k)] = hess(i, k);
    return j;
  }

  double value() const { return v_; }
  const Vec3& grad() const { return g_; }
  double hess(int i, int j) const { return h_[sym_index(i, j)]; }
  const PackedSym& hess_packed() const { return h_; }

  Mat3 hessian() const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = hess(i, j);
    return m;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v_ = a.v_ + b.v_;
    r.g_ = a.g_ + b.g_;
    r.h_ = a.h_ + b.h_;
    return r;
  }

  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v_ = a.v_ - b.v_;
    r.g_ = a.g_ - b.g_;
    r.h_ = a.h_ - b.h_;
    return r;
  }

  friend Jet2 operator-(const Jet2& a) {
    Jet2 r;
    r.v_ = -a.v_;
    r.g_ = -a.g_;
    r.h_ = -a.h_;
    return r;
  }

  // (uv)'' = u''v + uv'' + u'v' + v'u'
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v_ = a.v_ * b.v_;
    r.g_ = a.v_ * b.g_ + b.v_ * a.g_;
    r.h_ = a.v_ * b.h_ + b.v_ * a.h_ + sym_cross(a.g_, b.g_);
    return r;
  }

  // q = a/b: q' = (a' - q b')/b, q'' = (a'' - q'b' - b'q' - q b'')/b
  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    Jet2 r;
    const double inv = 1.0 / b.v_;
    r.v_ = a.v_ * inv;
    r.g_ = (a.g_ - r.v_ * b.g_) * inv;
    r.h_ = (a.h_ - sym_cross(r.g_, b.g_) - r.v_ * b.h_) * inv;
    return r;
  }

  friend Jet2 operator*(double c, const Jet2& a) { return Jet2(c) * a; }
  friend Jet2 operator*(const Jet2& a, double c) { return a * Jet2(c); }
  friend Jet2 operator+(const Jet2& a, double c) { return a + Jet2(c); }
  friend Jet2 operator+(double c, const Jet2& a) { return Jet2(c) + a; }
  friend Jet2 operator-(const Jet2& a, double c) { return a - Jet2(c); }
  friend Jet2 operator-(double c, const Jet2& a) { return Jet2(c) - a; }
  friend Jet2 operator/(const Jet2& a, double c) { return a / Jet2(c); }
  friend Jet2 operator/(double c, const Jet2& a) { return Jet2(c) / a; }

  /// Composition rule for an outer function with derivatives f0 = f(u),
  /// f1 = f'(u), f2 = f''(u):
  ///   value f(u), grad f'(u) u_i, hess f'(u) u_ij + f''(u) u_i u_j.
  static Jet2 compose(const Jet2& u, double f0, double f1, double f2) {
    Jet2 r;
    r.v_ = f0;
    r.g_ = f1 * u.g_;
    r.h_ = f1 * u.h_ + f2 * sym_outer(u.g_);
    return r;
  }

private:
  double v_ = 0.0;
  Vec3 g_ = Vec3::Zero();
  PackedSym h_ = PackedSym::Zero();
};

inline Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.value());
  return Jet2::compose(u, e, e, e);
}

inline Jet2 log(const Jet2& u) {
  const double inv = 1.0 / u.value();
  return Jet2::compose(u, std::log(u.value()), inv, -inv * inv);
}

inline Jet2 sin(const Jet2& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  return Jet2::compose(u, s, c, -s);
}

inline Jet2 cos(const Jet2& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  return Jet2::compose(u, c, -s, -c);
}

// d(tan u) = 1 + tan^2, d2 = 2 tan (1 + tan^2)
inline Jet2 tan(const Jet2& u) {
  const double t = std::tan(u.value());
  const double d = 1.0 + t * t;
  return Jet2::compose(u, t, d, 2.0 * t * d);
}

inline Jet2 sqrt(const Jet2& u) {
  const double r = std::sqrt(u.value());
  const double d1 = 0.5 / r;
  return Jet2::compose(u, r, d1, -0.5 * d1 / u.value());
}

}  // namespace circv::fieldexpr
