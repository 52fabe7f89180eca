#pragma once

#include <Eigen/Dense>

namespace circv {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A point of the coordinate patch, (x1, x2, x3).
using Point = Eigen::Vector3d;

}  // namespace circv
