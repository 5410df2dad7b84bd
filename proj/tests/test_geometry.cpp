#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mcbyte/geometry.hpp"
#include "mcbyte/io.hpp"
#include "support/oracles.hpp"

using namespace mcbyte;

TEST_CASE("iou hand values") {
    CHECK(iou(BBox{0, 0, 10, 10}, BBox{5, 0, 10, 10}) == doctest::Approx(50.0 / 150.0));
    CHECK(iou(BBox{0, 0, 10, 10}, BBox{0, 0, 10, 10}) == 1.0);
    CHECK(iou(BBox{0, 0, 10, 10}, BBox{20, 20, 10, 10}) == 0.0);
    // Touching edges share no area.
    CHECK(iou(BBox{0, 0, 10, 10}, BBox{10, 0, 10, 10}) == 0.0);
}

TEST_CASE("iou of degenerate boxes is zero") {
    CHECK(iou(BBox{0, 0, 0, 10}, BBox{0, 0, 10, 10}) == 0.0);
    CHECK(iou(BBox{0, 0, 0, 0}, BBox{0, 0, 0, 0}) == 0.0);
}

TEST_CASE("iou symmetry and range on random boxes") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-30.0, 60.0), s(0.5, 40.0);
    for (int i = 0; i < 500; ++i) {
        const BBox a{u(rng), u(rng), s(rng), s(rng)};
        const BBox b{u(rng), u(rng), s(rng), s(rng)};
        const double v = iou(a, b);
        CHECK(v == iou(b, a));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("rasterize clips and rounds half-up") {
    const PixelRect r = rasterize(BBox{-2, -2, 4, 4}, 64, 64);
    CHECK(r.c0 == 0);
    CHECK(r.r0 == 0);
    CHECK(r.c1 == 2);
    CHECK(r.r1 == 2);
    CHECK(r.pixel_count() == 4);

    CHECK(rasterize(BBox{-10, -10, 5, 5}, 64, 64).empty());
    CHECK(rasterize(BBox{100, 0, 5, 5}, 64, 64).empty());
    // Half-up boundary: [0.5, 3.5) covers pixels 1..3.
    const PixelRect h = rasterize(BBox{0.5, 0.5, 3.0, 3.0}, 64, 64);
    CHECK(h.c0 == 1);
    CHECK(h.c1 == 4);
    CHECK(h.pixel_count() == 9);
}

namespace {

MaskObservation solid_mask(int width, int height, const BBox& fg, double conf = 1.0) {
    std::vector<std::uint8_t> bm(static_cast<std::size_t>(width) * height, 0);
    const PixelRect r = rasterize(fg, width, height);
    for (int row = r.r0; row < r.r1; ++row) {
        for (int c = r.c0; c < r.c1; ++c) {
            bm[static_cast<std::size_t>(row) * width + c] = 1;
        }
    }
    MaskObservation m;
    m.width = width;
    m.height = height;
    m.runs = rle_encode(bm, width, height);
    m.mean_confidence = conf;
    return m;
}

}  // namespace

TEST_CASE("mask fully inside a box twice its size: mc 1, mf 0.5") {
    const MaskObservation m = solid_mask(8, 8, BBox{0, 0, 4, 4});
    const MaskBoxOverlap o = mask_bbox_ratios(m, BBox{0, 0, 4, 8});
    CHECK(o.intersection == 16);
    CHECK(o.mc == 1.0);
    CHECK(o.mf == 0.5);
}

TEST_CASE("empty mask or empty clipped box yields zeros") {
    MaskObservation empty;
    empty.width = 8;
    empty.height = 8;
    empty.runs = {64};
    CHECK(empty.support_size() == 0);
    CHECK(empty.empty());
    const MaskBoxOverlap o = mask_bbox_ratios(empty, BBox{0, 0, 4, 4});
    CHECK(o.mc == 0.0);
    CHECK(o.mf == 0.0);

    const MaskObservation m = solid_mask(8, 8, BBox{0, 0, 4, 4});
    const MaskBoxOverlap off = mask_bbox_ratios(m, BBox{-20, -20, 5, 5});
    CHECK(off.mc == 0.0);
    CHECK(off.mf == 0.0);
    CHECK(off.intersection == 0);
}

TEST_CASE("ratios match per-pixel counting on random masks and boxes") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> pos(-20.0, 70.0), side(1.0, 50.0);
    std::uniform_int_distribution<int> bit(0, 3);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::uint8_t> bm(64 * 64, 0);
        for (auto& px : bm) px = bit(rng) == 0 ? 1 : 0;
        MaskObservation m;
        m.width = 64;
        m.height = 64;
        m.runs = rle_encode(bm, 64, 64);
        m.mean_confidence = 1.0;
        const BBox box{pos(rng), pos(rng), side(rng), side(rng)};

        const MaskBoxOverlap got = mask_bbox_ratios(m, box);
        const oracle::PixelOverlap want = oracle::count_overlap(m, box);
        CHECK(got.intersection == want.intersection);
        CHECK(m.support_size() == want.mask_pixels);
        if (want.mask_pixels > 0) {
            CHECK(got.mc == static_cast<double>(want.intersection) /
                                static_cast<double>(want.mask_pixels));
        }
        if (want.box_pixels > 0) {
            CHECK(got.mf == static_cast<double>(want.intersection) /
                                static_cast<double>(want.box_pixels));
        }
        // mc·|mask| and mf·|box| both recover the integer intersection.
        if (want.mask_pixels > 0 && want.box_pixels > 0) {
            CHECK(std::llround(got.mc * static_cast<double>(want.mask_pixels)) ==
                  want.intersection);
            CHECK(std::llround(got.mf * static_cast<double>(want.box_pixels)) ==
                  want.intersection);
        }
    }
}
