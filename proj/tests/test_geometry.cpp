#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hapnav/errors.hpp"
#include "hapnav/geometry.hpp"
#include "hapnav/rng.hpp"

using namespace hapnav;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("hand rotation from wrist to hand") {
    CHECK(hand_rotation({0, 0}, {0, 10}) == 0.0);
    CHECK(hand_rotation({0, 0}, {10, 0}) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(hand_rotation({0, 0}, {10, 10}) == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(hand_rotation({0, 0}, {-10, 0}) == doctest::Approx(-kPi / 2).epsilon(1e-12));
    // straight down is +pi, never -pi
    CHECK(hand_rotation({0, 0}, {0, -10}) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(hand_rotation({0, 0}, {0, 0.51}) == 0.0);
    CHECK(code_of([] { hand_rotation({0, 0}, {0.3, 0.3}); }) == ErrorCode::DegeneratePose);
    CHECK(code_of([] { hand_rotation({1, 1}, {1, 1.5}); }) == ErrorCode::DegeneratePose);
}

TEST_CASE("motor vectors") {
    const MotorVectors m0 = motor_vectors(0.0);
    CHECK(m0[MotorId::A] == PlanePoint{0, 1});
    CHECK(m0[MotorId::B] == PlanePoint{-0.0, -1});
    CHECK(m0[MotorId::C] == PlanePoint{1, -0.0});
    CHECK(m0[MotorId::D] == PlanePoint{-1, 0});

    const MotorVectors m90 = motor_vectors(kPi / 2);
    auto near = [](PlanePoint a, PlanePoint b) { return distance(a, b) < 1e-12; };
    CHECK(near(m90[MotorId::A], {1, 0}));
    CHECK(near(m90[MotorId::B], {-1, 0}));
    CHECK(near(m90[MotorId::C], {0, -1}));
    CHECK(near(m90[MotorId::D], {0, 1}));

    const MotorVectors m30 = motor_vectors(kPi / 6);
    CHECK(m30[MotorId::A].x == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(m30[MotorId::A].y == doctest::Approx(0.8660).epsilon(1e-4));
}

TEST_CASE("motor distances") {
    const auto d0 = motor_distances(motor_vectors(0.0), DirectionVector({1, 0}));
    CHECK(d0[0] == doctest::Approx(kSqrt2));
    CHECK(d0[1] == doctest::Approx(kSqrt2));
    CHECK(d0[2] == 0.0);
    CHECK(d0[3] == 2.0);

    const auto d45 = motor_distances(motor_vectors(0.0), DirectionVector::normalized({1, 1}));
    CHECK(d45[0] == doctest::Approx(0.7654).epsilon(1e-4));
    CHECK(d45[2] == doctest::Approx(0.7654).epsilon(1e-4));
    CHECK(d45[1] == doctest::Approx(1.8478).epsilon(1e-4));
    CHECK(d45[3] == doctest::Approx(1.8478).epsilon(1e-4));

    const auto d90 = motor_distances(motor_vectors(kPi / 2), DirectionVector({1, 0}));
    CHECK(d90[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d90[1] == doctest::Approx(2.0));
    CHECK(d90[2] == doctest::Approx(kSqrt2));
    CHECK(d90[3] == doctest::Approx(kSqrt2));
}

TEST_CASE("direction selection") {
    const MotorVectors mv = motor_vectors(0.0);
    CHECK(select_direction({0, 0}, {5, 1}, Approach::WorstAxis, mv).value() == mv[MotorId::C]);
    CHECK(select_direction({0, 0}, {0, -7}, Approach::WorstAxis, mv).value() == mv[MotorId::B]);
    const auto two = select_direction({0, 0}, {3, 4}, Approach::TwoTactor, mv);
    CHECK(two.x() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(two.y() == doctest::Approx(0.8).epsilon(1e-12));
    // exact diagonal: A wins the tie over C
    CHECK(select_direction({0, 0}, {1, 1}, Approach::WorstAxis, mv).value() == mv[MotorId::A]);
    CHECK(code_of([&] { select_direction({2, 2}, {2, 2}, Approach::TwoTactor, mv); }) ==
          ErrorCode::DegenerateTarget);
}

TEST_CASE("direction vector checks its norm") {
    CHECK(code_of([] { DirectionVector({1.1, 0}); }) == ErrorCode::NotUnit);
    CHECK(code_of([] { DirectionVector::normalized({0, 0}); }) == ErrorCode::DegenerateTarget);
    CHECK_NOTHROW(DirectionVector({1 + 5e-7, 0}));
}

TEST_CASE("point validity") {
    CHECK(is_valid({0, 0}));
    CHECK(is_valid({500, -500}));
    CHECK_FALSE(is_valid({500.1, 0}));
    CHECK_FALSE(is_valid({std::nan(""), 0}));
    CHECK_FALSE(is_valid({0, INFINITY}));
}

TEST_CASE("property: rotation equivariance of motor distances") {
    Rng rng(11);
    for (int k = 0; k < 10000; ++k) {
        const double gamma = rng.uniform(-kPi, kPi);
        const double phi = rng.uniform(-kPi, kPi);
        const DirectionVector d({std::cos(phi), std::sin(phi)});
        const auto rotated = motor_distances(motor_vectors(gamma), d);
        // motor_vectors rotates clockwise by gamma, so undo it with a counter-clockwise turn
        const auto base = motor_distances(motor_vectors(0.0), DirectionVector::normalized(rotate(d.value(), gamma)));
        for (int m = 0; m < 4; ++m) REQUIRE(std::abs(rotated[m] - base[m]) < 1e-9);
    }
}

TEST_CASE("property: one motor of each axis pair at most sqrt(2)") {
    Rng rng(12);
    for (int k = 0; k < 10000; ++k) {
        const double gamma = rng.uniform(-kPi, kPi);
        const double phi = rng.uniform(-kPi, kPi);
        const auto dist = motor_distances(motor_vectors(gamma), DirectionVector({std::cos(phi), std::sin(phi)}));
        const bool ab = (dist[0] <= kSqrt2) != (dist[1] <= kSqrt2) || std::abs(dist[0] - kSqrt2) < 1e-9;
        const bool cd = (dist[2] <= kSqrt2) != (dist[3] <= kSqrt2) || std::abs(dist[2] - kSqrt2) < 1e-9;
        REQUIRE(ab);
        REQUIRE(cd);
        int below = 0;
        for (double v : dist) below += v < kSqrt2 ? 1 : 0;
        REQUIRE(below <= 2);
        for (double v : dist) REQUIRE((v >= 0.0 && v <= 2.0));
    }
}

TEST_CASE("property: worst-axis returns a motor vector") {
    Rng rng(13);
    for (int k = 0; k < 10000; ++k) {
        const MotorVectors mv = motor_vectors(rng.uniform(-kPi, kPi));
        const PlanePoint hand{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        const PlanePoint target{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        if (distance(hand, target) < 1e-6) continue;
        const PlanePoint d = select_direction(hand, target, Approach::WorstAxis, mv).value();
        bool found = false;
        for (MotorId m : kMotors) found = found || d == mv[m];
        REQUIRE(found);
    }
}

}  // TEST_SUITE
