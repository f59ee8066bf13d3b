#include "biphasic/quadrature.hpp"

#include <cmath>

#include "biphasic/errors.hpp"

namespace biphasic {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "Gauss-Legendre rule needs n >= 1");
  QuadratureRule rule;
  rule.dim = 1;
  // Newton iteration on the Legendre recurrence, mapped from [-1,1] to [0,1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    SmallVector p(1);
    p(0) = 0.5 * (1.0 - x);
    rule.points.push_back(p);
    rule.weights.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

namespace {

QuadratureRule dunavant_degree4() {
  QuadratureRule rule;
  rule.dim = 2;
  const double a[2] = {0.445948490915965, 0.091576213509771};
  const double w[2] = {0.223381589678011, 0.109951743655322};
  for (int k = 0; k < 2; ++k) {
    const double b = 1.0 - 2.0 * a[k];
    const double pts[3][2] = {{a[k], a[k]}, {b, a[k]}, {a[k], b}};
    for (const auto& q : pts) {
      SmallVector p(2);
      p << q[0], q[1];
      rule.points.push_back(p);
      rule.weights.push_back(0.5 * w[k]);
    }
  }
  return rule;
}

/// Collapsed tensor-product Gauss rule (Duffy transform).
QuadratureRule collapsed_rule(int dim, int n) {
  const QuadratureRule g = gauss_legendre(n);
  QuadratureRule rule;
  rule.dim = dim;
  if (dim == 2) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double u = g.points[i](0), v = g.points[j](0);
        SmallVector p(2);
        p << u, v * (1.0 - u);
        rule.points.push_back(p);
        rule.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - u));
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const double u = g.points[i](0), v = g.points[j](0), w = g.points[k](0);
          SmallVector p(3);
          p << u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v);
          rule.points.push_back(p);
          rule.weights.push_back(g.weights[i] * g.weights[j] * g.weights[k] * (1.0 - u) *
                                 (1.0 - u) * (1.0 - v));
        }
      }
    }
  }
  return rule;
}

}  // namespace

QuadratureRule simplex_rule(int dim, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidParameter, "quadrature degree must be >= 0");
  switch (dim) {
    case 1:
      return gauss_legendre(degree / 2 + 1);
    case 2:
      if (degree == 3 || degree == 4) return dunavant_degree4();
      return collapsed_rule(2, (degree + 2 + 1) / 2);
    case 3:
      return collapsed_rule(3, (degree + 3 + 1) / 2);
    default:
      throw Error(ErrorCode::UnsupportedElement, "quadrature dimension must be 1, 2 or 3");
  }
}

}  // namespace biphasic
