#pragma once

#include <vector>

#include "biphasic/types.hpp"

namespace biphasic {

/// Quadrature on a reference simplex: the unit interval [0,1], the triangle
/// {x,y >= 0, x+y <= 1} or the tetrahedron {x,y,z >= 0, x+y+z <= 1}.
struct QuadratureRule {
  int dim = 0;
  std::vector<SmallVector> points;
  std::vector<double> weights;  // sum to the reference measure (1, 1/2, 1/6)

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre rule with n points on [0,1].
QuadratureRule gauss_legendre(int n);

/// Rule on the reference simplex of dimension 1..3 exact for polynomials of
/// total degree <= degree.
QuadratureRule simplex_rule(int dim, int degree);

}  // namespace biphasic
