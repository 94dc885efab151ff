#include "hapnav/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "hapnav/errors.hpp"

namespace hapnav {

bool is_valid(PlanePoint p) noexcept {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::abs(p.x) <= kMaxCoordinateCm &&
           std::abs(p.y) <= kMaxCoordinateCm;
}

std::string_view to_string(MotorId m) noexcept {
    switch (m) {
        case MotorId::A: return "A";
        case MotorId::B: return "B";
        case MotorId::C: return "C";
        case MotorId::D: return "D";
    }
    return "?";
}

DirectionVector::DirectionVector(PlanePoint v) : v_(v) {
    const double n = norm(v);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTolerance) {
        throw Error(ErrorCode::NotUnit, "direction vector norm is " + std::to_string(n));
    }
}

DirectionVector DirectionVector::normalized(PlanePoint v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::DegenerateTarget, "cannot normalize a zero-length vector");
    }
    return DirectionVector(v * (1.0 / n), Trusted{});
}

double hand_rotation(PlanePoint wrist, PlanePoint hand) {
    const PlanePoint axis = hand - wrist;
    if (!(norm(axis) > kMinWristHandCm)) {
        throw Error(ErrorCode::DegeneratePose, "wrist and hand closer than 0.5 cm");
    }
    // atan2(dx, dy): angle measured from +y, growing toward +x (clockwise).
    double gamma = std::atan2(axis.x, axis.y);
    if (gamma <= -std::numbers::pi) gamma = std::numbers::pi;
    return gamma;
}

MotorVectors motor_vectors(double gamma) {
    const double s = std::sin(gamma);
    const double c = std::cos(gamma);
    MotorVectors mv;
    mv.v[index_of(MotorId::A)] = {s, c};
    mv.v[index_of(MotorId::B)] = {-s, -c};
    mv.v[index_of(MotorId::C)] = {c, -s};
    mv.v[index_of(MotorId::D)] = {-c, s};
    return mv;
}

PerMotor<double> motor_distances(const MotorVectors& mv, const DirectionVector& d) {
    PerMotor<double> out{};
    for (MotorId m : kMotors) {
        out[index_of(m)] = std::clamp(distance(mv[m], d.value()), 0.0, 2.0);
    }
    return out;
}

MotorId closest_motor(const MotorVectors& mv, PlanePoint v) {
    MotorId best = MotorId::A;
    double best_dist = distance(mv[best], v);
    for (MotorId m : kMotors) {
        const double dist = distance(mv[m], v);
        if (dist < best_dist) {
            best = m;
            best_dist = dist;
        }
    }
    return best;
}

DirectionVector select_direction(PlanePoint hand, PlanePoint target, Approach approach,
                                 const MotorVectors& mv) {
    const DirectionVector to_target = DirectionVector::normalized(target - hand);
    if (approach == Approach::TwoTactor) return to_target;
    return DirectionVector(mv[closest_motor(mv, to_target.value())]);
}

}  // namespace hapnav
