#pragma once

#include <Eigen/Dense>

#include "mcbyte/geometry.hpp"

namespace mcbyte {

// Constant-velocity box state: (cx, cy, a, h, vcx, vcy, va, vh) with
// a = w/h. Process and measurement noise are height-scaled (h/20 position,
// h/160 velocity), matching the reference tracker constants.
struct KFState {
    Eigen::Matrix<double, 8, 1> mean = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Matrix<double, 8, 8> cov = Eigen::Matrix<double, 8, 8>::Zero();
};

KFState kf_init(const BBox& b);
KFState kf_predict(const KFState& s);
KFState kf_update(const KFState& s, const BBox& z);

// Throws std::domain_error when the state carries a non-positive height or
// aspect (corrupted state, never clamped).
BBox kf_to_bbox(const KFState& s);

}  // namespace mcbyte
