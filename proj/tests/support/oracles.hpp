#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mcbyte/geometry.hpp"
#include "mcbyte/grid.hpp"
#include "mcbyte/metrics.hpp"

// Independent reference implementations the tests compare against. Everything
// here is deliberately brute force: exhaustive enumeration and per-pixel
// counting, no shared code paths with the library.
namespace oracle {

struct BruteAssignment {
    int match_count = 0;
    double total_cost = 0.0;
    std::vector<std::pair<int, int>> matches;  // lexicographically smallest optimum
};

// Enumerates every injective partial row->col mapping whose pairs all have
// cost <= gate; picks max match count, then min total cost, then the
// lexicographically smallest match list. Exponential; keep n, m small.
BruteAssignment brute_force_assignment(const mcbyte::Grid<double>& costs, double gate);

// Per-pixel expansion of an RLE mask into a bitmap (row-major, 0/1).
std::vector<std::uint8_t> decode_mask(const mcbyte::MaskObservation& mask);

struct PixelOverlap {
    std::int64_t mask_pixels = 0;
    std::int64_t box_pixels = 0;
    std::int64_t intersection = 0;
};

// Counts by looping over every pixel of the image grid.
PixelOverlap count_overlap(const mcbyte::MaskObservation& mask, const mcbyte::BBox& box);

struct BruteEval {
    double mota = 0.0;
    double idf1 = 0.0;
    long long fp = 0;
    long long fn = 0;
    long long idsw = 0;
};

// CLEAR + IDF1 by exhaustive enumeration: per-frame leftover matching and
// the global trajectory correspondence are both brute-forced. Keep the
// scene at a handful of ids and frames.
BruteEval brute_eval(const mcbyte::FrameMap& gt, const mcbyte::FrameMap& res,
                     double iou_min = 0.5);

}  // namespace oracle
