#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mcbyte/association.hpp"
#include "mcbyte/cmc.hpp"
#include "mcbyte/geometry.hpp"
#include "mcbyte/kalman.hpp"
#include "mcbyte/maskprov.hpp"
#include "mcbyte/variant.hpp"

namespace mcbyte {

struct Detection {
    BBox bbox;
    double score = 0.0;
};

enum class TrackStatus { Tentative, Active, Lost, Removed };

struct Tracklet {
    int id = 0;
    KFState state;
    TrackStatus status = TrackStatus::Tentative;
    int birth_frame = 0;
    int last_matched_frame = 0;
    double score = 0.0;
    std::optional<int> mask_binding;
};

struct TrackerConfig {
    double det_high = 0.6;
    double det_low_floor = 0.1;
    double new_track = 0.7;
    double match_stage1 = 0.8;
    double match_stage2 = 0.5;
    double match_unconfirmed = 0.7;
    int track_buffer = 30;
    MaskGateThresholds mask;
    Variant variant = Variant::McByte;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct TrackOutput {
    int id = 0;
    BBox bbox;
    double score = 0.0;
};

void split_detections(std::span<const Detection> dets, const TrackerConfig& cfg,
                      std::vector<Detection>& high, std::vector<Detection>& low);

// One tracking sequence. Frames must arrive as 1, 2, 3, ... The provider
// receives exactly one bind request per spawned tracklet and a release when
// the tracklet is removed.
class Tracker {
public:
    explicit Tracker(TrackerConfig cfg,
                     std::shared_ptr<MaskProvider> masks = std::make_shared<NullMaskProvider>());

    std::vector<TrackOutput> process_frame(int frame_idx, std::span<const Detection> dets,
                                           const WarpTransform& warp);

    const std::vector<Tracklet>& tracklets() const { return tracklets_; }

private:
    struct StageResult;
    StageResult run_stage(const std::vector<std::size_t>& pool,
                          const std::vector<Detection>& dets,
                          const std::vector<std::optional<MaskObservation>>& masks_now,
                          double gate);
    void sync_mask_lifecycle();

    TrackerConfig cfg_;
    std::shared_ptr<MaskProvider> masks_;
    std::vector<Tracklet> tracklets_;
    std::vector<std::size_t> pending_bind_;
    int next_id_ = 1;
    int last_frame_ = 0;
};

struct FrameInput {
    std::vector<Detection> detections;
    WarpTransform warp;
};

// Drives a tracker over frames 1..N; outputs[f-1] holds frame f.
std::vector<std::vector<TrackOutput>> run_sequence(std::span<const FrameInput> frames,
                                                   const TrackerConfig& cfg,
                                                   std::shared_ptr<MaskProvider> masks);

}  // namespace mcbyte
