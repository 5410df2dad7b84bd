#include "mcbyte/maskprov.hpp"

#include <algorithm>
#include <stdexcept>

#include "mcbyte/io.hpp"

namespace mcbyte {

FileMaskProvider::FileMaskProvider(std::vector<MaskStream> streams)
    : streams_(std::move(streams)) {
    for (std::size_t i = 0; i < streams_.size(); ++i) {
        if (!index_by_id_.emplace(streams_[i].stream_id, i).second) {
            throw std::invalid_argument("duplicate mask stream id " +
                                        std::to_string(streams_[i].stream_id));
        }
        bound_[streams_[i].stream_id] = false;
    }
}

std::optional<int> FileMaskProvider::bind(int birth_frame, const BBox& det_bbox) {
    int best_id = -1;
    double best_iou = 0.0;
    for (const MaskStream& s : streams_) {
        if (bound_[s.stream_id] || s.birth_frame != birth_frame) continue;
        const double v = iou(s.birth_bbox, det_bbox);
        if (v >= 0.5 && (v > best_iou || (v == best_iou && best_id >= 0 && s.stream_id < best_id))) {
            best_iou = v;
            best_id = s.stream_id;
        }
    }
    if (best_id < 0) {
        return std::nullopt;
    }
    bound_[best_id] = true;
    return best_id;
}

std::optional<MaskObservation> FileMaskProvider::fetch(int handle, int frame) {
    const auto it = index_by_id_.find(handle);
    if (it == index_by_id_.end()) {
        return std::nullopt;
    }
    const MaskStream& s = streams_[it->second];
    const auto f = s.frames.find(frame);
    if (f == s.frames.end()) {
        return std::nullopt;
    }
    return f->second;
}

namespace {

// Separable square-kernel max/min filter over a 0/1 bitmap.
std::vector<std::uint8_t> morph(const std::vector<std::uint8_t>& in, int w, int h, int k,
                                bool dilate) {
    std::vector<std::uint8_t> tmp(in.size()), out(in.size());
    const auto pick = [dilate](std::uint8_t acc, std::uint8_t v) {
        return dilate ? std::max(acc, v) : std::min(acc, v);
    };
    const std::uint8_t init = dilate ? 0 : 1;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            std::uint8_t acc = init;
            for (int dc = -k; dc <= k; ++dc) {
                const int cc = c + dc;
                const std::uint8_t v =
                    (cc >= 0 && cc < w) ? in[static_cast<std::size_t>(r) * w + cc] : 0;
                acc = pick(acc, v);
            }
            tmp[static_cast<std::size_t>(r) * w + c] = acc;
        }
    }
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            std::uint8_t acc = init;
            for (int dr = -k; dr <= k; ++dr) {
                const int rr = r + dr;
                const std::uint8_t v =
                    (rr >= 0 && rr < h) ? tmp[static_cast<std::size_t>(rr) * w + c] : 0;
                acc = pick(acc, v);
            }
            out[static_cast<std::size_t>(r) * w + c] = acc;
        }
    }
    return out;
}

}  // namespace

std::optional<MaskObservation> oracle_noise(const MaskObservation& obs,
                                            const MaskNoiseConfig& cfg,
                                            std::mt19937_64& rng) {
    // One draw per call regardless of config keeps the random stream aligned
    // across noise settings for a fixed seed.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < cfg.dropout_prob) {
        return std::nullopt;
    }
    MaskObservation out = obs;
    if (cfg.dilate_px != 0 && !obs.empty()) {
        const int k = std::abs(cfg.dilate_px);
        const std::vector<std::uint8_t> bitmap = rle_decode(obs.runs, obs.width, obs.height);
        const std::vector<std::uint8_t> shaped =
            morph(bitmap, obs.width, obs.height, k, cfg.dilate_px > 0);
        out.runs = rle_encode(shaped, obs.width, obs.height);
    }
    out.mean_confidence = std::max(0.0, obs.mean_confidence - cfg.conf_drop);
    if (out.empty()) {
        out.mean_confidence = 0.0;
    }
    return out;
}

}  // namespace mcbyte
