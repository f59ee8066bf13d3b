#pragma once

// Second-order forward-mode automatic differentiation in up to three
// variables: value, gradient and Hessian propagated together.

#include <cmath>

#include <Eigen/Core>

namespace biphasic {

struct Jet {
  double v = 0.0;
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: implicit so constants mix freely
  Jet(double value, const Eigen::Vector3d& grad, const Eigen::Matrix3d& hess)
      : v(value), g(grad), h(hess) {}

  /// Independent variable k at value x.
  static Jet variable(double x, int k) {
    Jet j(x);
    j.g(k) = 1.0;
    return j;
  }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
  friend Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }
  friend Jet operator-(const Jet& a) { return {-a.v, -a.g, -a.h}; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.v * b.g + b.v * a.g,
            a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose()};
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    return a * chain(b, 1.0 / b.v, -1.0 / (b.v * b.v), 2.0 / (b.v * b.v * b.v));
  }

  /// f(a) given f, f' and f'' at a.v.
  static Jet chain(const Jet& a, double f, double df, double d2f) {
    return {f, df * a.g, df * a.h + d2f * a.g * a.g.transpose()};
  }
};

inline Jet sin(const Jet& a) { return Jet::chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return Jet::chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return Jet::chain(a, e, e, e);
}
inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return Jet::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet pow(const Jet& a, double p) {
  return Jet::chain(a, std::pow(a.v, p), p * std::pow(a.v, p - 1.0),
                    p * (p - 1.0) * std::pow(a.v, p - 2.0));
}

}  // namespace biphasic
