#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcbyte/cmc.hpp"

using namespace mcbyte;

TEST_CASE("translation warp shifts a box exactly") {
    const BBox b{10, 20, 30, 40};
    const BBox w = warp_bbox(b, WarpTransform::translation(3.5, -2.0));
    CHECK(w.x == doctest::Approx(13.5).epsilon(1e-12));
    CHECK(w.y == doctest::Approx(18.0).epsilon(1e-12));
    CHECK(w.w == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(w.h == doctest::Approx(40.0).epsilon(1e-12));
}

TEST_CASE("90-degree rotation swaps the box sides") {
    // (x, y) -> (-y, x)
    const WarpTransform rot{0.0, -1.0, 0.0, 1.0, 0.0, 0.0};
    const BBox w = warp_bbox(BBox{0, 0, 10, 20}, rot);
    CHECK(w.w == doctest::Approx(20.0));
    CHECK(w.h == doctest::Approx(10.0));
    CHECK(w.x == doctest::Approx(-20.0));
    CHECK(w.y == doctest::Approx(0.0));
}

TEST_CASE("degenerate linear part is rejected") {
    const WarpTransform flat{1.0, 2.0, 0.0, 2.0, 4.0, 0.0};  // det = 0
    CHECK_THROWS_AS(warp_bbox(BBox{0, 0, 10, 10}, flat), std::invalid_argument);
}

TEST_CASE("identity warp leaves the state bit-identical") {
    KFState s = kf_init(BBox{5, 6, 10, 20});
    s.mean(4) = 1.25;
    s.cov(0, 0) = 3.75;
    const KFState w = warp_prediction(s, WarpTransform::identity());
    CHECK(w.mean == s.mean);
    CHECK(w.cov == s.cov);
}

TEST_CASE("warp_prediction moves position, keeps velocity and covariance") {
    KFState s = kf_init(BBox{10, 10, 10, 20});
    s.mean(4) = 2.0;
    s.mean(5) = -1.0;
    const KFState w = warp_prediction(s, WarpTransform::translation(7.0, 3.0));
    const BBox b = kf_to_bbox(w);
    CHECK(b.x == doctest::Approx(17.0).epsilon(1e-9));
    CHECK(b.y == doctest::Approx(13.0).epsilon(1e-9));
    CHECK(b.w == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(b.h == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(w.mean(4) == 2.0);
    CHECK(w.mean(5) == -1.0);
    CHECK(w.cov == s.cov);
}

TEST_CASE("file warp provider serves frames and rejects gaps") {
    std::map<int, WarpTransform> warps;
    warps[1] = WarpTransform::identity();
    warps[2] = WarpTransform::translation(-3, 0);
    const FileWarpProvider p(warps);
    CHECK(p.at(1).is_identity());
    CHECK(p.at(2).a13 == -3.0);
    CHECK_THROWS(p.at(3));
}
