#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "mcbyte/geometry.hpp"

namespace mcbyte {

// Precomputed trace of one object's propagated mask: frames where the mask
// was entirely occluded carry no entry.
struct MaskStream {
    int stream_id = 0;
    int birth_frame = 0;
    BBox birth_bbox;
    std::map<int, MaskObservation> frames;
};

// Hands per-tracklet masks to the tracker. bind is called exactly once per
// new tracklet; a failed bind leaves the tracklet mask-less for life.
class MaskProvider {
public:
    virtual ~MaskProvider() = default;
    virtual std::optional<int> bind(int birth_frame, const BBox& det_bbox) = 0;
    virtual std::optional<MaskObservation> fetch(int handle, int frame) = 0;
    virtual void release(int handle) {}
};

class NullMaskProvider final : public MaskProvider {
public:
    std::optional<int> bind(int, const BBox&) override { return std::nullopt; }
    std::optional<MaskObservation> fetch(int, int) override { return std::nullopt; }
};

// Binds each stream at most once, to the unbound stream born at the given
// frame whose birth box has the highest IoU >= 0.5 with the detection
// (lowest stream id on ties).
class FileMaskProvider final : public MaskProvider {
public:
    explicit FileMaskProvider(std::vector<MaskStream> streams);
    std::optional<int> bind(int birth_frame, const BBox& det_bbox) override;
    std::optional<MaskObservation> fetch(int handle, int frame) override;

private:
    std::vector<MaskStream> streams_;
    std::map<int, std::size_t> index_by_id_;
    std::map<int, bool> bound_;
};

struct MaskNoiseConfig {
    int dilate_px = 0;       // negative erodes
    double conf_drop = 0.0;  // subtracted from mean_confidence, floored at 0
    double dropout_prob = 0.0;
};

// Stress transform standing in for propagator errors: square-kernel
// dilation/erosion, confidence drop, whole-mask dropout. Deterministic for a
// given rng state; absent result models the mask vanishing entirely.
std::optional<MaskObservation> oracle_noise(const MaskObservation& obs,
                                            const MaskNoiseConfig& cfg,
                                            std::mt19937_64& rng);

}  // namespace mcbyte
