#include "mcbyte/kalman.hpp"

#include <stdexcept>

namespace mcbyte {

namespace {

constexpr double kStdWeightPos = 1.0 / 20.0;
constexpr double kStdWeightVel = 1.0 / 160.0;

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat48 = Eigen::Matrix<double, 4, 8>;

Mat8 transition() {
    Mat8 f = Mat8::Identity();
    for (int i = 0; i < 4; ++i) {
        f(i, i + 4) = 1.0;
    }
    return f;
}

Vec4 measure(const BBox& b) {
    Vec4 z;
    z << b.cx(), b.cy(), b.w / b.h, b.h;
    return z;
}

}  // namespace

KFState kf_init(const BBox& b) {
    KFState s;
    s.mean.head<4>() = measure(b);

    const double h = b.h;
    Vec8 std;
    std << 2.0 * kStdWeightPos * h, 2.0 * kStdWeightPos * h, 1e-2, 2.0 * kStdWeightPos * h,
        10.0 * kStdWeightVel * h, 10.0 * kStdWeightVel * h, 1e-5, 10.0 * kStdWeightVel * h;
    s.cov = std.array().square().matrix().asDiagonal();
    return s;
}

KFState kf_predict(const KFState& s) {
    const double h = s.mean(3);
    Vec8 std;
    std << kStdWeightPos * h, kStdWeightPos * h, 1e-2, kStdWeightPos * h,
        kStdWeightVel * h, kStdWeightVel * h, 1e-5, kStdWeightVel * h;
    const Mat8 q = std.array().square().matrix().asDiagonal();

    const Mat8 f = transition();
    KFState out;
    out.mean = f * s.mean;
    out.cov = f * s.cov * f.transpose() + q;
    return out;
}

KFState kf_update(const KFState& s, const BBox& z) {
    const double h = s.mean(3);
    Vec4 std;
    std << kStdWeightPos * h, kStdWeightPos * h, 1e-1, kStdWeightPos * h;
    const Mat4 r = std.array().square().matrix().asDiagonal();

    Mat48 hm = Mat48::Zero();
    hm.leftCols<4>() = Mat4::Identity();

    const Vec4 projected = s.mean.head<4>();
    const Mat4 innovation_cov = s.cov.topLeftCorner<4, 4>() + r;
    const Eigen::Matrix<double, 8, 4> gain =
        s.cov * hm.transpose() * innovation_cov.inverse();

    KFState out;
    out.mean = s.mean + gain * (measure(z) - projected);
    out.cov = s.cov - gain * innovation_cov * gain.transpose();
    // Re-symmetrize to keep round-off from accumulating skew.
    out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
    return out;
}

BBox kf_to_bbox(const KFState& s) {
    const double a = s.mean(2);
    const double h = s.mean(3);
    if (h <= 0.0 || a <= 0.0) {
        throw std::domain_error("kalman state degenerated to non-positive aspect or height");
    }
    const double w = a * h;
    return BBox{s.mean(0) - 0.5 * w, s.mean(1) - 0.5 * h, w, h};
}

}  // namespace mcbyte
