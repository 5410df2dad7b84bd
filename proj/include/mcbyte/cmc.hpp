#pragma once

#include <map>
#include <memory>

#include "mcbyte/geometry.hpp"
#include "mcbyte/kalman.hpp"

namespace mcbyte {

// 2x3 affine mapping (x,y) -> (a11*x + a12*y + a13, a21*x + a22*y + a23),
// taking frame t-1 coordinates to frame t coordinates.
struct WarpTransform {
    double a11 = 1.0, a12 = 0.0, a13 = 0.0;
    double a21 = 0.0, a22 = 1.0, a23 = 0.0;

    static WarpTransform identity() { return {}; }
    static WarpTransform translation(double dx, double dy) {
        return {1.0, 0.0, dx, 0.0, 1.0, dy};
    }
    bool is_identity() const {
        return a11 == 1.0 && a12 == 0.0 && a13 == 0.0 && a21 == 0.0 && a22 == 1.0 &&
               a23 == 0.0;
    }
    double det() const { return a11 * a22 - a12 * a21; }
    void apply(double x, double y, double& ox, double& oy) const {
        ox = a11 * x + a12 * y + a13;
        oy = a21 * x + a22 * y + a23;
    }
};

// Axis-aligned hull of the four warped corners. Throws std::invalid_argument
// on a degenerate (zero-determinant) linear part.
BBox warp_bbox(const BBox& b, const WarpTransform& w);

// Re-syncs the predicted mean's position block (center, aspect, height) to
// the warped box; velocities and covariance untouched. Identity warps are a
// strict no-op so CMC-off and CMC-identity runs stay bit-identical.
KFState warp_prediction(const KFState& s, const WarpTransform& w);

class WarpProvider {
public:
    virtual ~WarpProvider() = default;
    virtual WarpTransform at(int frame) const = 0;
};

class IdentityWarpProvider final : public WarpProvider {
public:
    WarpTransform at(int) const override { return WarpTransform::identity(); }
};

// Serves warps parsed from a warp file; a frame without an entry is a hard
// input error naming the frame.
class FileWarpProvider final : public WarpProvider {
public:
    explicit FileWarpProvider(std::map<int, WarpTransform> warps) : warps_(std::move(warps)) {}
    WarpTransform at(int frame) const override;

private:
    std::map<int, WarpTransform> warps_;
};

}  // namespace mcbyte
