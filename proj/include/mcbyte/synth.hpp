#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mcbyte/cmc.hpp"
#include "mcbyte/geometry.hpp"
#include "mcbyte/io.hpp"
#include "mcbyte/maskprov.hpp"

namespace mcbyte {

enum class ObjectShape { Ellipse, Rectangle };

// Object center keyframe; positions between keyframes interpolate linearly,
// positions outside the keyframed range clamp to the nearest end.
struct Waypoint {
    int frame = 1;
    double cx = 0.0;
    double cy = 0.0;
};

struct ObjectSpec {
    ObjectShape shape = ObjectShape::Rectangle;
    double w = 20.0;
    double h = 20.0;
    std::vector<Waypoint> waypoints;
};

struct DetectorNoise {
    double center_jitter = 0.0;       // px std
    double size_jitter = 0.0;         // relative std
    double drop_prob = 0.0;
    double drop_prob_occluded = 0.0;  // used instead when occlusion >= 0.5
    double score_base = 0.95;
    double score_occl_penalty = 0.0;  // score -= penalty * occlusion fraction
    double score_jitter = 0.0;
};

// Static camera unless pan velocity or shake amplitude is set. Shake adds an
// independent uniform offset in [-amp, amp]^2 on frames [shake_from, shake_to].
struct CameraModel {
    double pan_vx = 0.0;
    double pan_vy = 0.0;
    double shake_amp = 0.0;
    int shake_from = 0;
    int shake_to = -1;
};

// Mask-stream corruption, scheduled per object-frame; at most one mode fires
// per mask. dropout removes the mask. corrupt and bleed both slide the mask
// off its target onto the far side of a neighbour (it becomes the
// neighbour's box pushed half a box further away, so it never covers its
// own object): a corrupt slide is flagged by a confidence drop, a bleed
// keeps full confidence and only its low box-coverage ratio betrays it.
// stray replaces the mask with a small blob parked in a far corner of a
// neighbour's box. Without a neighbour, slides fall back to dilating the
// own mask.
struct SynthMaskNoise {
    double dropout_prob = 0.0;
    double corrupt_prob = 0.0;
    double bleed_prob = 0.0;
    double stray_prob = 0.0;
    int bleed_px = 6;  // fallback dilation margin
    int stray_size = 5;
    double conf_drop = 0.45;
};

struct ScenarioSpec {
    int width = 640;
    int height = 480;
    int frame_count = 2;
    std::vector<ObjectSpec> objects;  // later entries occlude earlier ones
    DetectorNoise det_noise;
    CameraModel camera;
    SynthMaskNoise mask_noise;
    double trajectory_jitter_std = 0.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

// gt ids are 1-based object indices; mask stream ids match them. Every frame
// has a warp entry (frame 1 is the identity), so a file round-trip feeds the
// tracker without gaps.
struct Scenario {
    std::vector<MotRecord> gt;
    std::vector<MotRecord> detections;
    std::vector<MaskStream> streams;
    std::map<int, WarpTransform> warps;
};

Scenario generate(const ScenarioSpec& spec);

// crossing | occlusion_cluster | blur_pan | pedestrian_plain; unknown names
// are rejected.
ScenarioSpec preset(const std::string& name);
const std::vector<std::string>& preset_names();

// JSON scenario description (all fields optional except objects; unknown
// keys rejected). Throws ParseError with the file name on bad input.
ScenarioSpec parse_scenario_spec(const std::string& json_text, const std::string& file = {});
ScenarioSpec read_scenario_spec_file(const std::string& path);

}  // namespace mcbyte
