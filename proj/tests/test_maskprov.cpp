#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "mcbyte/io.hpp"
#include "mcbyte/maskprov.hpp"

using namespace mcbyte;

namespace {

MaskObservation solid(int width, int height, int c0, int r0, int c1, int r1,
                      double conf = 1.0) {
    std::vector<std::uint8_t> bm(static_cast<std::size_t>(width) * height, 0);
    for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) bm[static_cast<std::size_t>(r) * width + c] = 1;
    MaskObservation m;
    m.width = width;
    m.height = height;
    m.runs = rle_encode(bm, width, height);
    m.mean_confidence = conf;
    return m;
}

MaskStream stream(int id, int birth_frame, const BBox& birth) {
    MaskStream s;
    s.stream_id = id;
    s.birth_frame = birth_frame;
    s.birth_bbox = birth;
    s.frames[birth_frame] = solid(32, 32, 4, 4, 12, 12);
    return s;
}

// Bounding extents of the decoded foreground.
PixelRect extents(const MaskObservation& m) {
    const auto bm = rle_decode(m.runs, m.width, m.height);
    PixelRect e{m.width, m.height, 0, 0};
    for (int r = 0; r < m.height; ++r) {
        for (int c = 0; c < m.width; ++c) {
            if (!bm[static_cast<std::size_t>(r) * m.width + c]) continue;
            e.c0 = std::min(e.c0, c);
            e.r0 = std::min(e.r0, r);
            e.c1 = std::max(e.c1, c + 1);
            e.r1 = std::max(e.r1, r + 1);
        }
    }
    return e;
}

}  // namespace

TEST_CASE("bind picks the best-overlapping unbound stream") {
    FileMaskProvider p({stream(1, 1, BBox{0, 0, 10, 10}), stream(2, 1, BBox{2, 0, 10, 10})});
    auto first = p.bind(1, BBox{0, 0, 10, 10});
    REQUIRE(first.has_value());
    CHECK(*first == 1);
    // Stream 1 is taken; the overlapping runner-up is next.
    auto second = p.bind(1, BBox{0, 0, 10, 10});
    REQUIRE(second.has_value());
    CHECK(*second == 2);
    CHECK_FALSE(p.bind(1, BBox{0, 0, 10, 10}).has_value());
}

TEST_CASE("bind refuses weak overlap and foreign birth frames") {
    FileMaskProvider p({stream(1, 3, BBox{0, 0, 10, 10})});
    CHECK_FALSE(p.bind(3, BBox{100, 100, 10, 10}).has_value());  // IoU 0
    CHECK_FALSE(p.bind(3, BBox{6, 0, 10, 10}).has_value());      // IoU 0.25 < 0.5
    CHECK_FALSE(p.bind(1, BBox{0, 0, 10, 10}).has_value());      // wrong frame
    CHECK(p.bind(3, BBox{0, 0, 10, 10}).has_value());
}

TEST_CASE("bind breaks exact ties by lowest stream id") {
    FileMaskProvider p({stream(7, 1, BBox{0, 0, 10, 10}), stream(2, 1, BBox{0, 0, 10, 10})});
    auto h = p.bind(1, BBox{0, 0, 10, 10});
    REQUIRE(h.has_value());
    CHECK(*h == 2);
}

TEST_CASE("binding is permanent: release does not free the stream") {
    FileMaskProvider p({stream(1, 1, BBox{0, 0, 10, 10})});
    auto h = p.bind(1, BBox{0, 0, 10, 10});
    REQUIRE(h.has_value());
    p.release(*h);
    CHECK_FALSE(p.bind(1, BBox{0, 0, 10, 10}).has_value());
}

TEST_CASE("fetch returns per-frame masks and nullopt elsewhere") {
    MaskStream s = stream(5, 2, BBox{0, 0, 10, 10});
    s.frames[3] = solid(32, 32, 5, 5, 13, 13, 0.9);
    FileMaskProvider p({s});
    auto h = p.bind(2, BBox{0, 0, 10, 10});
    REQUIRE(h.has_value());
    auto m2 = p.fetch(*h, 2);
    REQUIRE(m2.has_value());
    CHECK(m2->support_size() == 64);
    auto m3 = p.fetch(*h, 3);
    REQUIRE(m3.has_value());
    CHECK(m3->mean_confidence == 0.9);
    CHECK_FALSE(p.fetch(*h, 4).has_value());   // occluded frame
    CHECK_FALSE(p.fetch(99, 2).has_value());   // unknown handle
}

TEST_CASE("duplicate stream ids are rejected") {
    std::vector<MaskStream> ss{stream(1, 1, BBox{0, 0, 10, 10}),
                               stream(1, 1, BBox{20, 0, 10, 10})};
    CHECK_THROWS_AS(FileMaskProvider{ss}, std::invalid_argument);
}

TEST_CASE("oracle_noise dilation and erosion act as square kernels") {
    const MaskObservation m = solid(20, 20, 5, 5, 15, 15);
    std::mt19937_64 rng(11);
    MaskNoiseConfig dil;
    dil.dilate_px = 2;
    auto d = oracle_noise(m, dil, rng);
    REQUIRE(d.has_value());
    CHECK(d->support_size() == 14 * 14);
    PixelRect de = extents(*d);
    CHECK(de.c0 == 3);
    CHECK(de.r0 == 3);
    CHECK(de.c1 == 17);
    CHECK(de.r1 == 17);

    MaskNoiseConfig ero;
    ero.dilate_px = -2;
    auto e = oracle_noise(m, ero, rng);
    REQUIRE(e.has_value());
    CHECK(e->support_size() == 6 * 6);
    PixelRect ee = extents(*e);
    CHECK(ee.c0 == 7);
    CHECK(ee.c1 == 13);
}

TEST_CASE("oracle_noise drops confidence with a floor at zero") {
    const MaskObservation m = solid(20, 20, 5, 5, 15, 15, 1.0);
    std::mt19937_64 rng(3);
    MaskNoiseConfig cfg;
    cfg.conf_drop = 0.3;
    auto out = oracle_noise(m, cfg, rng);
    REQUIRE(out.has_value());
    CHECK(out->mean_confidence == doctest::Approx(0.7));
    cfg.conf_drop = 2.0;
    auto floored = oracle_noise(m, cfg, rng);
    REQUIRE(floored.has_value());
    CHECK(floored->mean_confidence == 0.0);
}

TEST_CASE("oracle_noise dropout removes the mask outright") {
    const MaskObservation m = solid(20, 20, 5, 5, 15, 15);
    std::mt19937_64 rng(3);
    MaskNoiseConfig cfg;
    cfg.dropout_prob = 1.0;
    CHECK_FALSE(oracle_noise(m, cfg, rng).has_value());
}

TEST_CASE("a mask eroded to nothing loses its confidence too") {
    const MaskObservation m = solid(20, 20, 9, 9, 11, 11, 0.8);  // 2x2 blob
    std::mt19937_64 rng(5);
    MaskNoiseConfig cfg;
    cfg.dilate_px = -2;
    auto out = oracle_noise(m, cfg, rng);
    REQUIRE(out.has_value());
    CHECK(out->support_size() == 0);
    CHECK(out->mean_confidence == 0.0);
}

TEST_CASE("oracle_noise consumes one draw per call regardless of settings") {
    const MaskObservation m = solid(20, 20, 5, 5, 15, 15);
    std::mt19937_64 a(42), b(42);
    MaskNoiseConfig none;
    MaskNoiseConfig heavy;
    heavy.dilate_px = 3;
    heavy.conf_drop = 0.2;
    oracle_noise(m, none, a);
    oracle_noise(m, heavy, b);
    CHECK(a() == b());  // streams stayed aligned
}

TEST_CASE("zero-noise config is the identity") {
    const MaskObservation m = solid(20, 20, 5, 5, 15, 15, 0.77);
    std::mt19937_64 rng(9);
    auto out = oracle_noise(m, MaskNoiseConfig{}, rng);
    REQUIRE(out.has_value());
    CHECK(out->runs == m.runs);
    CHECK(out->mean_confidence == m.mean_confidence);
    CHECK(out->width == m.width);
    CHECK(out->height == m.height);
}
