#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "mcbyte/synth.hpp"

using namespace mcbyte;

namespace {

ScenarioSpec one_walker(int frames = 10) {
    ScenarioSpec s;
    s.width = 200;
    s.height = 200;
    s.frame_count = frames;
    ObjectSpec o;
    o.shape = ObjectShape::Rectangle;
    o.w = 20.0;
    o.h = 30.0;
    o.waypoints = {{1, 50, 60}, {frames, 120, 60}};
    s.objects = {o};
    return s;
}

std::vector<MotRecord> rows_for_id(const std::vector<MotRecord>& all, long long id) {
    std::vector<MotRecord> out;
    for (const MotRecord& r : all)
        if (r.id == id) out.push_back(r);
    return out;
}

}  // namespace

TEST_CASE("zero noise reproduces ground truth in the detections") {
    Scenario sc = generate(one_walker());
    REQUIRE(sc.gt.size() == 10);
    REQUIRE(sc.detections.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
        const MotRecord& g = sc.gt[k];
        const MotRecord& d = sc.detections[k];
        CHECK(g.id == 1);
        CHECK(g.score == 1.0);
        CHECK(d.id == -1);
        CHECK(d.frame == g.frame);
        CHECK(d.x == g.x);
        CHECK(d.y == g.y);
        CHECK(d.w == g.w);
        CHECK(d.h == g.h);
        CHECK(d.score == 0.95);  // detector score floor with no jitter
    }
    // Linear interpolation between the two waypoints, in frame coordinates.
    CHECK(sc.gt.front().x == doctest::Approx(40.0));
    CHECK(sc.gt.back().x == doctest::Approx(110.0));
    CHECK(sc.gt[4].x > sc.gt[3].x);
}

TEST_CASE("clean masks cover their object box exactly") {
    Scenario sc = generate(one_walker());
    REQUIRE(sc.streams.size() == 1);
    const MaskStream& s = sc.streams[0];
    CHECK(s.stream_id == 1);
    CHECK(s.birth_frame == 1);
    CHECK(s.birth_bbox.x == sc.gt.front().x);
    REQUIRE(s.frames.size() == 10);
    for (const MotRecord& g : sc.gt) {
        const auto it = s.frames.find(g.frame);
        REQUIRE(it != s.frames.end());
        const MaskBoxOverlap ov = mask_bbox_ratios(it->second, g.bbox());
        CHECK(ov.mc == 1.0);  // rectangle silhouette fills its own box
        CHECK(ov.mf == 1.0);
        CHECK(it->second.mean_confidence == 1.0);
    }
}

TEST_CASE("the crossing preset hides the crawler during full occlusion") {
    ScenarioSpec spec = preset("crossing");
    spec.seed = 7;
    Scenario sc = generate(spec);
    REQUIRE(sc.streams.size() == 2);
    const MaskStream& a = sc.streams[0];
    REQUIRE(a.stream_id == 1);

    std::set<int> gt_frames;
    for (const MotRecord& r : rows_for_id(sc.gt, 1)) gt_frames.insert(r.frame);
    std::set<int> mask_frames;
    for (const auto& [f, m] : a.frames) mask_frames.insert(f);
    CHECK(gt_frames == mask_frames);  // crossing runs without mask noise

    std::set<int> absent;
    for (int f = 1; f <= spec.frame_count; ++f)
        if (!gt_frames.count(f)) absent.insert(f);
    CHECK(absent == std::set<int>{24, 25, 26, 27, 28});

    // The occluder itself never vanishes.
    CHECK(rows_for_id(sc.gt, 2).size() == static_cast<std::size_t>(spec.frame_count));
}

TEST_CASE("a panning camera yields warps consistent with the ground truth") {
    ScenarioSpec s;
    s.width = 200;
    s.height = 200;
    s.frame_count = 8;
    s.camera.pan_vx = 2.0;
    ObjectSpec o;
    o.w = 20.0;
    o.h = 20.0;
    o.waypoints = {{1, 100, 100}};
    s.objects = {o};
    Scenario sc = generate(s);

    REQUIRE(sc.warps.size() == 8);
    CHECK(sc.warps.at(1).is_identity());
    for (int t = 2; t <= 8; ++t) {
        CHECK(sc.warps.at(t).a13 == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(sc.warps.at(t).a23 == doctest::Approx(0.0).epsilon(1e-12));
    }
    const std::vector<MotRecord> rows = rows_for_id(sc.gt, 1);
    REQUIRE(rows.size() == 8);
    for (int t = 2; t <= 8; ++t) {
        const BBox prev = rows[static_cast<std::size_t>(t) - 2].bbox();
        const BBox cur = rows[static_cast<std::size_t>(t) - 1].bbox();
        const BBox warped = warp_bbox(prev, sc.warps.at(t));
        CHECK(warped.x == doctest::Approx(cur.x).epsilon(1e-9));
        CHECK(warped.y == doctest::Approx(cur.y).epsilon(1e-9));
    }
}

TEST_CASE("generation is deterministic byte for byte") {
    ScenarioSpec spec = preset("occlusion_cluster");
    spec.seed = 5;
    Scenario a = generate(spec);
    Scenario b = generate(spec);
    CHECK(write_mot(a.gt) == write_mot(b.gt));
    CHECK(write_mot(a.detections) == write_mot(b.detections));
    CHECK(write_mask_streams(a.streams) == write_mask_streams(b.streams));
    CHECK(write_warps(a.warps) == write_warps(b.warps));
    // And a different seed actually changes something.
    spec.seed = 6;
    Scenario c = generate(spec);
    CHECK(write_mot(a.detections) != write_mot(c.detections));
}

TEST_CASE("scenario specs parse from JSON") {
    const std::string minimal = R"({
        "frame_count": 5,
        "objects": [{"waypoints": [[1, 50, 50]]}]
    })";
    ScenarioSpec s = parse_scenario_spec(minimal);
    CHECK(s.frame_count == 5);
    CHECK(s.width == 640);  // defaults kept
    REQUIRE(s.objects.size() == 1);
    CHECK(s.objects[0].shape == ObjectShape::Rectangle);

    const std::string full = R"({
        "width": 320, "height": 240, "frame_count": 12, "seed": 9,
        "trajectory_jitter_std": 0.5,
        "objects": [
            {"shape": "ellipse", "w": 30, "h": 28,
             "waypoints": [[1, 40, 40], [12, 200, 40]]}
        ],
        "detector": {"center_jitter": 1.0, "drop_prob": 0.1, "score_base": 0.9},
        "camera": {"pan_vx": 1.5, "shake_amp": 3.0, "shake_from": 2, "shake_to": 6},
        "mask_noise": {"dropout_prob": 0.2, "bleed_prob": 0.1, "conf_drop": 0.4}
    })";
    ScenarioSpec f = parse_scenario_spec(full);
    CHECK(f.width == 320);
    CHECK(f.seed == 9);
    CHECK(f.objects[0].shape == ObjectShape::Ellipse);
    CHECK(f.det_noise.drop_prob == 0.1);
    CHECK(f.camera.pan_vx == 1.5);
    CHECK(f.mask_noise.bleed_prob == 0.1);
}

TEST_CASE("scenario JSON rejects malformed input") {
    CHECK_THROWS_AS(parse_scenario_spec("not json"), ParseError);
    CHECK_THROWS_AS(parse_scenario_spec("[1,2]"), ParseError);
    // objects is mandatory
    CHECK_THROWS_AS(parse_scenario_spec(R"({"frame_count": 5})"), ParseError);
    // unknown keys anywhere are rejected
    CHECK_THROWS_AS(parse_scenario_spec(R"({
        "frame_count": 5, "objects": [{"waypoints": [[1,0,0]]}], "typo": 1
    })"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario_spec(R"({
        "frame_count": 5, "objects": [{"waypoints": [[1,0,0]], "speed": 2}]
    })"),
                    ParseError);
    // frame_count is required (defaults would otherwise mask its absence)
    CHECK_THROWS_AS(parse_scenario_spec(R"({"objects": [{"waypoints": [[1,0,0]]}]})"),
                    ParseError);
    // waypoints must be [frame, cx, cy] triples
    CHECK_THROWS_AS(parse_scenario_spec(R"({
        "frame_count": 5, "objects": [{"waypoints": [[1, 0]]}]
    })"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario_spec(R"({
        "frame_count": 5, "objects": [{"shape": "blob", "waypoints": [[1,0,0]]}]
    })"),
                    ParseError);
    // the file name lands in the message
    try {
        parse_scenario_spec("{]", "scene.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("scene.json") != std::string::npos);
    }
}

TEST_CASE("spec validation catches out-of-range numbers") {
    ScenarioSpec s = one_walker();
    s.det_noise.drop_prob = 1.5;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = one_walker();
    s.mask_noise.corrupt_prob = 0.6;
    s.mask_noise.bleed_prob = 0.6;  // sum > 1
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = one_walker();
    s.objects[0].waypoints = {{5, 0, 0}, {5, 1, 1}};  // frames not increasing
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = one_walker();
    s.frame_count = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("presets enumerate and build valid scenarios") {
    const auto& names = preset_names();
    REQUIRE(names.size() == 4);
    for (const std::string& n : names) {
        ScenarioSpec s = preset(n);
        CHECK_NOTHROW(s.validate());
    }
    CHECK_THROWS_AS(preset("corridor"), std::invalid_argument);
}
