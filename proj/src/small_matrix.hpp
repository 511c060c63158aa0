#pragma once

#include <Eigen/Dense>

namespace simplexgeo::detail {

// Dynamic-size matrices with a fixed stack capacity, used on per-sample hot
// paths to avoid heap traffic. Larger problems fall back to Eigen::MatrixXd.
inline constexpr int kSmallCapacity = 12;

using SmallMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kSmallCapacity, kSmallCapacity>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kSmallCapacity, 1>;

inline bool fits_small(Eigen::Index rows, Eigen::Index cols) {
    return rows <= kSmallCapacity && cols <= kSmallCapacity;
}

}  // namespace simplexgeo::detail
