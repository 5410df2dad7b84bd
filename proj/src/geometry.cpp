#include "mcbyte/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mcbyte {

double iou(const BBox& a, const BBox& b) {
    if (!a.valid() || !b.valid()) {
        return 0.0;
    }
    const double ix0 = std::max(a.x, b.x);
    const double iy0 = std::max(a.y, b.y);
    const double ix1 = std::min(a.right(), b.right());
    const double iy1 = std::min(a.bottom(), b.bottom());
    const double iw = ix1 - ix0;
    const double ih = iy1 - iy0;
    if (iw <= 0.0 || ih <= 0.0) {
        return 0.0;
    }
    const double inter = iw * ih;
    return inter / (a.area() + b.area() - inter);
}

namespace {

int round_half_up(double v) {
    return static_cast<int>(std::floor(v + 0.5));
}

}  // namespace

PixelRect rasterize(const BBox& box, int width, int height) {
    PixelRect r;
    r.c0 = std::clamp(round_half_up(box.x), 0, width);
    r.r0 = std::clamp(round_half_up(box.y), 0, height);
    r.c1 = std::clamp(round_half_up(box.right()), 0, width);
    r.r1 = std::clamp(round_half_up(box.bottom()), 0, height);
    if (r.empty()) {
        return PixelRect{};
    }
    return r;
}

std::int64_t MaskObservation::support_size() const {
    std::int64_t fg = 0;
    for (std::size_t i = 1; i < runs.size(); i += 2) {
        fg += runs[i];
    }
    return fg;
}

MaskBoxOverlap mask_bbox_ratios(const MaskObservation& mask, const BBox& box) {
    MaskBoxOverlap out;
    const std::int64_t support = mask.support_size();
    const PixelRect rect = rasterize(box, mask.width, mask.height);
    if (support == 0 || rect.empty()) {
        return out;
    }

    // Walk foreground runs; each may span several rows of the row-major grid.
    std::int64_t pos = 0;
    std::int64_t inter = 0;
    const std::int64_t w = mask.width;
    for (std::size_t i = 0; i < mask.runs.size(); ++i) {
        const std::int64_t len = mask.runs[i];
        if (i % 2 == 1 && len > 0) {
            std::int64_t p = pos;
            std::int64_t remaining = len;
            while (remaining > 0) {
                const std::int64_t row = p / w;
                const std::int64_t col = p % w;
                const std::int64_t row_take = std::min(remaining, w - col);
                if (row >= rect.r0 && row < rect.r1) {
                    const std::int64_t lo = std::max<std::int64_t>(col, rect.c0);
                    const std::int64_t hi = std::min<std::int64_t>(col + row_take, rect.c1);
                    if (hi > lo) {
                        inter += hi - lo;
                    }
                }
                p += row_take;
                remaining -= row_take;
            }
        }
        pos += len;
    }

    out.intersection = inter;
    out.mc = static_cast<double>(inter) / static_cast<double>(support);
    out.mf = static_cast<double>(inter) / static_cast<double>(rect.pixel_count());
    return out;
}

}  // namespace mcbyte
