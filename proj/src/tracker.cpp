#include "mcbyte/tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mcbyte/assign.hpp"

namespace mcbyte {

namespace {

void check01(const char* name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    }
}

}  // namespace

void TrackerConfig::validate() const {
    check01("det_high", det_high);
    check01("det_low_floor", det_low_floor);
    check01("new_track", new_track);
    check01("match_stage1", match_stage1);
    check01("match_stage2", match_stage2);
    check01("match_unconfirmed", match_unconfirmed);
    check01("mask_conf", mask.mask_conf);
    check01("mc_min", mask.mc_min);
    check01("mf_min", mask.mf_min);
    if (!(det_low_floor < det_high)) {
        throw std::invalid_argument("det_low_floor must be below det_high");
    }
    if (!(det_high < new_track)) {
        throw std::invalid_argument("det_high must be below new_track");
    }
    if (track_buffer < 1) {
        throw std::invalid_argument("track_buffer must be >= 1");
    }
}

void split_detections(std::span<const Detection> dets, const TrackerConfig& cfg,
                      std::vector<Detection>& high, std::vector<Detection>& low) {
    high.clear();
    low.clear();
    for (const Detection& d : dets) {
        if (d.score >= cfg.det_high) {
            high.push_back(d);
        } else if (d.score >= cfg.det_low_floor) {
            low.push_back(d);
        }
    }
}

Tracker::Tracker(TrackerConfig cfg, std::shared_ptr<MaskProvider> masks)
    : cfg_(std::move(cfg)), masks_(std::move(masks)) {
    cfg_.validate();
    if (!masks_) {
        masks_ = std::make_shared<NullMaskProvider>();
    }
}

struct Tracker::StageResult {
    std::vector<std::pair<std::size_t, int>> matches;  // (tracklet index, det index)
    std::vector<std::size_t> unmatched_tracklets;
    std::vector<int> unmatched_dets;
};

Tracker::StageResult Tracker::run_stage(
    const std::vector<std::size_t>& pool, const std::vector<Detection>& dets,
    const std::vector<std::optional<MaskObservation>>& masks_now, double gate) {
    std::vector<BBox> pred;
    pred.reserve(pool.size());
    for (const std::size_t idx : pool) {
        pred.push_back(kf_to_bbox(tracklets_[idx].state));
    }
    std::vector<BBox> det_boxes;
    det_boxes.reserve(dets.size());
    for (const Detection& d : dets) {
        det_boxes.push_back(d.bbox);
    }

    CostMatrix cm = build_iou_costs(pred, det_boxes);
    if (uses_mask_cue(cfg_.variant)) {
        if (uses_entry_classes(cfg_.variant)) {
            classify_entries(cm, gate);
        }
        Grid<MaskGateResult> gates(static_cast<int>(pool.size()), static_cast<int>(dets.size()));
        for (int i = 0; i < gates.rows(); ++i) {
            const auto& mask = masks_now[pool[i]];
            const MaskObservation* m = mask ? &*mask : nullptr;
            for (int j = 0; j < gates.cols(); ++j) {
                gates.at(i, j) = gate_mask(m, det_boxes[j], cfg_.mask);
            }
        }
        fuse_costs(cm, gates, cfg_.variant);
    }

    const Assignment a = solve_assignment(cm.fused_costs, gate);
    StageResult r;
    for (const auto& [row, col] : a.matches) {
        r.matches.emplace_back(pool[row], col);
    }
    for (const int row : a.unmatched_rows) {
        r.unmatched_tracklets.push_back(pool[row]);
    }
    r.unmatched_dets = a.unmatched_cols;
    return r;
}

std::vector<TrackOutput> Tracker::process_frame(int frame_idx, std::span<const Detection> dets,
                                                const WarpTransform& warp) {
    if (frame_idx != last_frame_ + 1) {
        throw std::logic_error("frame index " + std::to_string(frame_idx) +
                               " out of sequence (expected " + std::to_string(last_frame_ + 1) +
                               ")");
    }
    last_frame_ = frame_idx;

    // Current-frame masks for every bound tracklet; absent = occluded.
    std::vector<std::optional<MaskObservation>> masks_now(tracklets_.size());
    for (std::size_t i = 0; i < tracklets_.size(); ++i) {
        Tracklet& t = tracklets_[i];
        if (t.status != TrackStatus::Removed && t.mask_binding) {
            masks_now[i] = masks_->fetch(*t.mask_binding, frame_idx);
        }
    }

    // (a) predict, (b) camera-motion compensation
    for (Tracklet& t : tracklets_) {
        if (t.status == TrackStatus::Removed) continue;
        t.state = kf_predict(t.state);
        if (t.state.mean(2) <= 0.0 || t.state.mean(3) <= 0.0) {
            // Long coasting (or a wild mismatch under the laxer variants) can
            // push aspect or height non-positive. kf_to_bbox refuses such
            // states, and the tracklet can never re-match, so terminate it.
            t.status = TrackStatus::Removed;
            continue;
        }
        if (uses_cmc(cfg_.variant)) {
            t.state = warp_prediction(t.state, warp);
        }
    }

    std::vector<Detection> high, low;
    split_detections(dets, cfg_, high, low);

    const auto apply_match = [&](std::size_t idx, const Detection& d) {
        Tracklet& t = tracklets_[idx];
        t.state = kf_update(t.state, d.bbox);
        t.status = TrackStatus::Active;
        t.last_matched_frame = frame_idx;
        t.score = d.score;
    };

    // (c) stage 1: Active + Lost vs high detections
    std::vector<std::size_t> pool1;
    for (std::size_t i = 0; i < tracklets_.size(); ++i) {
        const TrackStatus st = tracklets_[i].status;
        if (st == TrackStatus::Active || st == TrackStatus::Lost) {
            pool1.push_back(i);
        }
    }
    const StageResult s1 = run_stage(pool1, high, masks_now, cfg_.match_stage1);
    for (const auto& [idx, j] : s1.matches) {
        apply_match(idx, high[j]);
    }

    // (d) stage 2: still-Active leftovers vs low detections
    std::vector<std::size_t> pool2;
    for (const std::size_t idx : s1.unmatched_tracklets) {
        if (tracklets_[idx].status == TrackStatus::Active) {
            pool2.push_back(idx);
        }
    }
    const StageResult s2 = run_stage(pool2, low, masks_now, cfg_.match_stage2);
    for (const auto& [idx, j] : s2.matches) {
        apply_match(idx, low[j]);
    }

    // (e) stage 3: Tentative tracklets vs high detections left from stage 1
    std::vector<std::size_t> pool3;
    for (std::size_t i = 0; i < tracklets_.size(); ++i) {
        if (tracklets_[i].status == TrackStatus::Tentative) {
            pool3.push_back(i);
        }
    }
    std::vector<Detection> high_rest;
    high_rest.reserve(s1.unmatched_dets.size());
    for (const int j : s1.unmatched_dets) {
        high_rest.push_back(high[j]);
    }
    const StageResult s3 = run_stage(pool3, high_rest, masks_now, cfg_.match_unconfirmed);
    for (const auto& [idx, j] : s3.matches) {
        apply_match(idx, high_rest[j]);
    }

    // (g) lifecycle transitions
    for (Tracklet& t : tracklets_) {
        if (t.last_matched_frame == frame_idx) continue;
        if (t.status == TrackStatus::Tentative) {
            t.status = TrackStatus::Removed;
        } else if (t.status == TrackStatus::Active) {
            t.status = TrackStatus::Lost;
        }
        if (t.status == TrackStatus::Lost &&
            frame_idx - t.last_matched_frame > cfg_.track_buffer) {
            t.status = TrackStatus::Removed;
        }
    }

    // (h) spawn from unclaimed high detections
    for (const int j : s3.unmatched_dets) {
        const Detection& d = high_rest[j];
        if (d.score < cfg_.new_track) continue;
        Tracklet t;
        t.id = next_id_++;
        t.state = kf_init(d.bbox);
        t.status = frame_idx == 1 ? TrackStatus::Active : TrackStatus::Tentative;
        t.birth_frame = frame_idx;
        t.last_matched_frame = frame_idx;
        t.score = d.score;
        tracklets_.push_back(std::move(t));
        pending_bind_.push_back(tracklets_.size() - 1);
    }

    sync_mask_lifecycle();

    std::vector<TrackOutput> outputs;
    for (const Tracklet& t : tracklets_) {
        if (t.status == TrackStatus::Active) {
            outputs.push_back(TrackOutput{t.id, kf_to_bbox(t.state), t.score});
        }
    }
    std::erase_if(tracklets_, [](const Tracklet& t) { return t.status == TrackStatus::Removed; });
    return outputs;
}

void Tracker::sync_mask_lifecycle() {
    for (const std::size_t idx : pending_bind_) {
        Tracklet& t = tracklets_[idx];
        t.mask_binding = masks_->bind(t.birth_frame, kf_to_bbox(t.state));
    }
    pending_bind_.clear();
    for (Tracklet& t : tracklets_) {
        if (t.status == TrackStatus::Removed && t.mask_binding) {
            masks_->release(*t.mask_binding);
            t.mask_binding.reset();
        }
    }
}

std::vector<std::vector<TrackOutput>> run_sequence(std::span<const FrameInput> frames,
                                                   const TrackerConfig& cfg,
                                                   std::shared_ptr<MaskProvider> masks) {
    Tracker tracker(cfg, std::move(masks));
    std::vector<std::vector<TrackOutput>> outputs;
    outputs.reserve(frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f) {
        outputs.push_back(
            tracker.process_frame(static_cast<int>(f) + 1, frames[f].detections, frames[f].warp));
    }
    return outputs;
}

}  // namespace mcbyte
