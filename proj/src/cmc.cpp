#include "mcbyte/cmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mcbyte {

BBox warp_bbox(const BBox& b, const WarpTransform& w) {
    if (w.det() == 0.0 || !std::isfinite(w.det())) {
        throw std::invalid_argument("warp transform has a degenerate linear part");
    }
    const double xs[4] = {b.x, b.right(), b.x, b.right()};
    const double ys[4] = {b.y, b.y, b.bottom(), b.bottom()};
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        double ox, oy;
        w.apply(xs[i], ys[i], ox, oy);
        min_x = std::min(min_x, ox);
        min_y = std::min(min_y, oy);
        max_x = std::max(max_x, ox);
        max_y = std::max(max_y, oy);
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return BBox{min_x, min_y, std::max(max_x - min_x, eps), std::max(max_y - min_y, eps)};
}

KFState warp_prediction(const KFState& s, const WarpTransform& w) {
    if (w.is_identity()) {
        return s;
    }
    const BBox warped = warp_bbox(kf_to_bbox(s), w);
    KFState out = s;
    out.mean(0) = warped.cx();
    out.mean(1) = warped.cy();
    out.mean(2) = warped.w / warped.h;
    out.mean(3) = warped.h;
    return out;
}

WarpTransform FileWarpProvider::at(int frame) const {
    const auto it = warps_.find(frame);
    if (it == warps_.end()) {
        throw std::runtime_error("warp file has no entry for frame " + std::to_string(frame));
    }
    return it->second;
}

}  // namespace mcbyte
