#pragma once

#include <functional>

#include <Eigen/Core>

namespace biphasic {

/// Fixed-capacity, runtime-sized (2 or 3) geometric vector and matrix.
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

using ScalarFunction = std::function<double(const SmallVector& x)>;
using VectorFunction = std::function<SmallVector(const SmallVector& x)>;
using MatrixFunction = std::function<SmallMatrix(const SmallVector& x)>;
/// Boundary datum t(x, n) with n the outward unit normal.
using TractionFunction = std::function<SmallVector(const SmallVector& x, const SmallVector& n)>;

}  // namespace biphasic
