#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <biphasic/fem.hpp>
#include <biphasic/quadrature.hpp>

#include "test_support.hpp"

namespace biphasic {
namespace {

using testing::square;
using testing::vec;

double monomial_integral_2d(int a, int b) {
  // int_T x^a y^b over the reference triangle = a! b! / (a + b + 2)!
  return std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
}

double monomial_integral_3d(int a, int b, int c) {
  return std::tgamma(a + 1) * std::tgamma(b + 1) * std::tgamma(c + 1) / std::tgamma(a + b + c + 4);
}

TEST(Quadrature, GaussLegendreExactness) {
  for (int n = 1; n <= 6; ++n) {
    const QuadratureRule r = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int q = 0; q < r.size(); ++q) s += r.weights[q] * std::pow(r.points[q](0), k);
      EXPECT_NEAR(s, 1.0 / (k + 1), 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Quadrature, TriangleRulesExactToDegree) {
  for (int deg = 1; deg <= 8; ++deg) {
    const QuadratureRule r = simplex_rule(2, deg);
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        double s = 0.0;
        for (int q = 0; q < r.size(); ++q) s += r.weights[q] * std::pow(r.points[q](0), a) * std::pow(r.points[q](1), b);
        EXPECT_NEAR(s, monomial_integral_2d(a, b), 1e-14) << deg << ' ' << a << ' ' << b;
      }
    }
  }
}

TEST(Quadrature, TetrahedronRulesExactToDegree) {
  for (int deg = 1; deg <= 6; ++deg) {
    const QuadratureRule r = simplex_rule(3, deg);
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        for (int c = 0; a + b + c <= deg; ++c) {
          double s = 0.0;
          for (int q = 0; q < r.size(); ++q) {
            const SmallVector& p = r.points[q];
            s += r.weights[q] * std::pow(p(0), a) * std::pow(p(1), b) * std::pow(p(2), c);
          }
          EXPECT_NEAR(s, monomial_integral_3d(a, b, c), 1e-14);
        }
      }
    }
  }
}

TEST(Shape, PartitionOfUnityAndNodalProperty) {
  for (int dim : {2, 3}) {
    for (Family f : {Family::P1, Family::P2}) {
      Eigen::VectorXd v;
      Eigen::MatrixXd g;
      const SmallVector xi = SmallVector::Constant(dim, 0.2);
      reference_shape(f, dim, xi, v, g);
      EXPECT_NEAR(v.sum(), 1.0, 1e-14);
      EXPECT_LT(g.colwise().sum().norm(), 1e-13);
      // Vertex nodes.
      for (int k = 0; k <= dim; ++k) {
        SmallVector node = SmallVector::Zero(dim);
        if (k > 0) node(k - 1) = 1.0;
        reference_shape(f, dim, node, v, g);
        for (int j = 0; j < v.size(); ++j) EXPECT_NEAR(v(j), j == k ? 1.0 : 0.0, 1e-14);
      }
    }
  }
}

TEST(FunctionSpace, DofCounts) {
  const auto m1 = square(1);
  EXPECT_EQ(FunctionSpace(m1, Family::P1, 1, false).num_dofs(), 4);
  EXPECT_EQ(FunctionSpace(m1, Family::P1, 2, true).num_dofs(), 0);
  EXPECT_EQ(FunctionSpace(square(2), Family::P1, 1, true).num_dofs(), 1);
  // P2 on n=2: 9 vertices + 16 edges, interior nodes are 1 vertex + 8 edges.
  EXPECT_EQ(FunctionSpace(square(2), Family::P2, 1, false).num_dofs(), 25);
  EXPECT_EQ(FunctionSpace(square(2), Family::P2, 2, true).num_dofs(), 2 * (1 + 8));
}

TEST(Interpolate, ZeroFunction) {
  const auto s = build_space(square(3), Family::P2, 2, false);
  const FieldFunction u = interpolate(s, VectorFunction([](const SmallVector&) { return vec({0.0, 0.0}); }));
  EXPECT_EQ(u.coefficients.norm(), 0.0);
}

TEST(Interpolate, ReproducesSpaceMembersAtQuadraturePoints) {
  const auto linear = [](const SmallVector& x) { return vec({1.0 + 2.0 * x(0) - x(1), 0.5 * x(1)}); };
  const auto quadratic = [](const SmallVector& x) {
    return vec({x(0) * x(0) - 3.0 * x(0) * x(1) + x(1), x(1) * x(1) + 0.25});
  };
  const auto rule = simplex_rule(2, 4);
  for (auto [family, f] : {std::pair{Family::P1, VectorFunction(linear)}, std::pair{Family::P2, VectorFunction(quadratic)}}) {
    const auto s = build_space(square(3), family, 2, false);
    const FieldFunction u = interpolate(s, f);
    for (int c = 0; c < s->mesh().num_cells(); ++c) {
      const CellGeometry g = cell_geometry(s->mesh(), c);
      for (const auto& xi : rule.points) {
        EXPECT_LT((u.value_at(c, xi) - f(g.map(xi))).norm(), 1e-13);
      }
    }
  }
}

TEST(Norms, ConstantAndDivergence) {
  const auto scalar = build_space(square(4), Family::P1, 1, false);
  EXPECT_NEAR(l2_norm(interpolate(scalar, ScalarFunction([](const SmallVector&) { return 1.0; }))), 1.0, 1e-14);

  const auto vs = build_space(square(4), Family::P2, 2, false);
  const FieldFunction u = interpolate(vs, VectorFunction([](const SmallVector& x) { return vec({x(0), 0.0}); }));
  EXPECT_NEAR(div_l2(u), 1.0, 1e-13);
  EXPECT_NEAR(grad_l2(u), 1.0, 1e-13);
  EXPECT_NEAR(h1_norm(u), std::sqrt(1.0 + 1.0 / 3.0), 1e-13);
}

TEST(Norms, DiskNormApproachesSqrtPi) {
  const auto disk = std::make_shared<const Mesh>(generate_unit_ball(4, 2));
  const auto s = build_space(disk, Family::P1, 1, false);
  const double n = l2_norm(interpolate(s, ScalarFunction([](const SmallVector&) { return 1.0; })));
  EXPECT_LT(std::abs(n - std::sqrt(M_PI)) / std::sqrt(M_PI), 0.01);
}

TEST(Norms, HomogeneityAndTriangleInequality) {
  const auto s = build_space(square(4), Family::P2, 2, false);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    FieldFunction a(s), b(s);
    for (int i = 0; i < s->num_dofs(); ++i) {
      a.coefficients(i) = normal(rng);
      b.coefficients(i) = normal(rng);
    }
    FieldFunction scaled(s, -3.5 * a.coefficients);
    EXPECT_NEAR(l2_norm(scaled), 3.5 * l2_norm(a), 1e-12 * l2_norm(scaled));
    EXPECT_NEAR(h1_norm(scaled), 3.5 * h1_norm(a), 1e-12 * h1_norm(scaled));
    FieldFunction sum(s, a.coefficients + b.coefficients);
    EXPECT_LE(l2_norm(sum), l2_norm(a) + l2_norm(b) + 1e-14);
    EXPECT_LE(h1_norm(sum), h1_norm(a) + h1_norm(b) + 1e-14);
  }
}

TEST(Norms, InterpolationErrorRate) {
  const VectorFunction f = [](const SmallVector& x) { return vec({std::sin(M_PI * x(0)) * std::cos(x(1)), std::exp(x(0) * x(1))}); };
  for (Family family : {Family::P1, Family::P2}) {
    std::vector<double> err;
    for (int n : {8, 16}) err.push_back(l2_error(interpolate(build_space(square(n), family, 2, false), f), f));
    const double rate = std::log2(err[0] / err[1]);
    EXPECT_NEAR(rate, degree(family) + 1, 0.2);
  }
}

TEST(SymmetricGradient, Examples) {
  const auto s = build_space(square(2), Family::P1, 2, false);
  const SmallVector xi = vec({0.25, 0.25});
  const auto D = [&](VectorFunction f) { return symmetric_gradient_at(interpolate(s, f), 3, xi); };
  EXPECT_LT(D([](const SmallVector& x) { return vec({-x(1), x(0)}); }).norm(), 1e-14);
  SmallMatrix expect(2, 2);
  expect << 1, 0, 0, 0;
  EXPECT_LT((D([](const SmallVector& x) { return vec({x(0), 0.0}); }) - expect).norm(), 1e-14);
  expect << 0, 0.5, 0.5, 0;
  EXPECT_LT((D([](const SmallVector& x) { return vec({x(1), 0.0}); }) - expect).norm(), 1e-14);
}

}  // namespace
}  // namespace biphasic
