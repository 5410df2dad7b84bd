#pragma once

#include <cstdint>
#include <vector>

namespace mcbyte {

// Axis-aligned box, top-left corner + size, continuous image coordinates.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const { return x + w; }
    double bottom() const { return y + h; }
    double cx() const { return x + 0.5 * w; }
    double cy() const { return y + 0.5 * h; }
    double area() const { return w * h; }
    bool valid() const { return w > 0.0 && h > 0.0; }
};

double iou(const BBox& a, const BBox& b);

// Integer pixel rectangle, half-open: columns [c0, c1), rows [r0, r1).
struct PixelRect {
    int c0 = 0;
    int r0 = 0;
    int c1 = 0;
    int r1 = 0;

    bool empty() const { return c1 <= c0 || r1 <= r0; }
    std::int64_t pixel_count() const {
        return empty() ? 0 : static_cast<std::int64_t>(c1 - c0) * (r1 - r0);
    }
};

// Pixel footprint of a continuous box: edges rounded half-up, clipped to
// [0,width) x [0,height). May come out empty.
PixelRect rasterize(const BBox& box, int width, int height);

// Binary mask support as row-major RLE. Runs alternate background /
// foreground starting with background; a leading 0 run lets the mask start
// on foreground. Run lengths always sum to width * height.
struct MaskObservation {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> runs;
    double mean_confidence = 0.0;

    std::int64_t support_size() const;
    bool empty() const { return support_size() == 0; }
};

struct MaskBoxOverlap {
    std::int64_t intersection = 0;  // |mask ∩ box| in pixels
    double mc = 0.0;                // intersection / |mask|
    double mf = 0.0;                // intersection / |box|, box clipped to image
};

// Both ratios share the same intersection count; empty mask or empty
// clipped box yields all zeros.
MaskBoxOverlap mask_bbox_ratios(const MaskObservation& mask, const BBox& box);

}  // namespace mcbyte
