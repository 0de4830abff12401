#pragma once

#include <Eigen/Dense>

namespace polyembed {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Points of R^{2n} in the fixed order (x_1..x_n, y_1..y_n).
using PhasePoint = Vec;

/// Index of x_i (0-based pair index i) in a point of dimension 2n.
constexpr Eigen::Index x_index(Eigen::Index pair, Eigen::Index /*n*/) { return pair; }
/// Index of y_i in a point of dimension 2n.
constexpr Eigen::Index y_index(Eigen::Index pair, Eigen::Index n) { return n + pair; }

}  // namespace polyembed
