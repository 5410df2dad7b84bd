#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "mcbyte/kalman.hpp"

using namespace mcbyte;

TEST_CASE("init stores center, aspect, height, zero velocity") {
    const KFState s = kf_init(BBox{0, 0, 10, 20});
    CHECK(s.mean(0) == 5.0);
    CHECK(s.mean(1) == 10.0);
    CHECK(s.mean(2) == 0.5);
    CHECK(s.mean(3) == 20.0);
    for (int i = 4; i < 8; ++i) {
        CHECK(s.mean(i) == 0.0);
    }
}

TEST_CASE("init/to_bbox round-trip") {
    const BBox b{12.5, -3.25, 17.0, 41.5};
    const BBox r = kf_to_bbox(kf_init(b));
    CHECK(std::abs(r.x - b.x) < 1e-9);
    CHECK(std::abs(r.y - b.y) < 1e-9);
    CHECK(std::abs(r.w - b.w) < 1e-9);
    CHECK(std::abs(r.h - b.h) < 1e-9);
}

TEST_CASE("constant velocity moves the mean linearly") {
    KFState s = kf_init(BBox{0, 0, 10, 20});
    s.mean(4) = 1.0;
    s.mean(5) = 1.0;
    for (int i = 0; i < 10; ++i) {
        s = kf_predict(s);
    }
    CHECK(s.mean(0) == doctest::Approx(15.0));
    CHECK(s.mean(1) == doctest::Approx(20.0));
    CHECK(s.mean(2) == doctest::Approx(0.5));
    CHECK(s.mean(3) == doctest::Approx(20.0));
}

TEST_CASE("repeated identical updates converge to the measurement") {
    KFState s = kf_init(BBox{0, 0, 8, 16});
    const BBox z{40, 60, 12, 24};
    double err50 = 0.0;
    for (int i = 0; i < 500; ++i) {
        s = kf_predict(s);
        s = kf_update(s, z);
        if (i == 49) {
            const BBox mid = kf_to_bbox(s);
            err50 = std::abs(mid.x - z.x) + std::abs(mid.y - z.y) + std::abs(mid.w - z.w) +
                    std::abs(mid.h - z.h);
        }
    }
    // Process noise keeps the steady-state gain below one, so the approach is
    // geometric: tight after 500 steps, already close after 50.
    const BBox out = kf_to_bbox(s);
    CHECK(std::abs(out.x - z.x) < 1e-9);
    CHECK(std::abs(out.y - z.y) < 1e-9);
    CHECK(std::abs(out.w - z.w) < 1e-9);
    CHECK(std::abs(out.h - z.h) < 1e-9);
    CHECK(err50 < 0.05);
}

TEST_CASE("covariance stays symmetric positive semidefinite") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(0.0, 500.0), side(5.0, 60.0);
    KFState s = kf_init(BBox{100, 100, 20, 40});
    for (int i = 0; i < 1000; ++i) {
        s = kf_predict(s);
        if (i % 3 != 0) {
            s = kf_update(s, BBox{pos(rng), pos(rng), side(rng), side(rng)});
        }
        const Eigen::Matrix<double, 8, 8> sym = 0.5 * (s.cov + s.cov.transpose());
        CHECK((s.cov - sym).cwiseAbs().maxCoeff() < 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 8, 8>> es(sym);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
    }
}

TEST_CASE("prediction after observed motion tracks the trend") {
    KFState s = kf_init(BBox{0, 0, 10, 20});
    for (int f = 1; f <= 20; ++f) {
        s = kf_predict(s);
        s = kf_update(s, BBox{3.0 * f, 0, 10, 20});
    }
    s = kf_predict(s);
    const BBox p = kf_to_bbox(s);
    // Constant-velocity model should extrapolate close to x = 63.
    CHECK(p.x == doctest::Approx(63.0).epsilon(0.02));
}

TEST_CASE("to_bbox refuses corrupted states") {
    KFState s = kf_init(BBox{0, 0, 10, 20});
    s.mean(3) = -1.0;
    CHECK_THROWS_AS(kf_to_bbox(s), std::domain_error);
    s.mean(3) = 20.0;
    s.mean(2) = 0.0;
    CHECK_THROWS_AS(kf_to_bbox(s), std::domain_error);
}
