#pragma once

#include <map>
#include <span>
#include <vector>

#include "mcbyte/geometry.hpp"
#include "mcbyte/io.hpp"

namespace mcbyte {

struct IdBox {
    long long id = 0;
    BBox box;
};

// frame -> boxes present in that frame.
using FrameMap = std::map<int, std::vector<IdBox>>;

FrameMap frames_from_records(std::span<const MotRecord> records);

struct EvalReport {
    double mota = 0.0;
    double idf1 = 0.0;
    long long fp = 0;
    long long fn = 0;
    long long idsw = 0;
    long long gt_count = 0;
    long long idtp = 0;
    long long idfp = 0;
    long long idfn = 0;
};

struct FrameEvents {
    long long fp = 0;
    long long fn = 0;
    long long idsw = 0;
    std::vector<std::pair<long long, long long>> matches;  // (gt id, res id)
};

// One CLEAR accumulation step. Correspondences from previous frames persist
// when their IoU still clears iou_min; leftovers are matched by Hungarian on
// 1-IoU; a ground-truth object whose mapped result id changes counts one ID
// switch. Duplicate ids within either list are rejected.
FrameEvents clear_match_frame(const std::vector<IdBox>& gt, const std::vector<IdBox>& res,
                              std::map<long long, long long>& correspondence,
                              double iou_min = 0.5);

// CLEAR-MOT and IDF1 over full sequences. Throws std::invalid_argument when
// the ground truth holds no boxes (MOTA undefined).
EvalReport evaluate(const FrameMap& gt, const FrameMap& res, double iou_min = 0.5);

}  // namespace mcbyte
