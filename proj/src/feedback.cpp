#include "hapnav/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hapnav/errors.hpp"

namespace hapnav {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
}

void IntensityLaw::validate() const {
    if (!(center_distance_cm > 0.0) || !(zone_fraction > 0.0 && zone_fraction < 1.0) ||
        !(floor > 0.0 && floor < far_max && far_max <= kNearMax)) {
        throw Error(ErrorCode::InvalidArgument, "intensity law constants out of range");
    }
}

int VibrationFrame::active_count() const {
    return static_cast<int>(std::count_if(intensity.begin(), intensity.end(),
                                          [](double v) { return v > 0.0; }));
}

std::uint8_t VibrationFrame::active_mask() const {
    std::uint8_t mask = 0;
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        if (intensity[i] > 0.0) mask |= static_cast<std::uint8_t>(1u << i);
    }
    return mask;
}

bool VibrationFrame::is_buzz() const {
    return std::all_of(intensity.begin(), intensity.end(), [](double v) { return v == kNearMax; });
}

VibrationFrame buzz_frame(double t) { return {t, {kNearMax, kNearMax, kNearMax, kNearMax}}; }

VibrationFrame silent_frame(double t) { return {t, {0.0, 0.0, 0.0, 0.0}}; }

double max_intensity(IntensityMode mode, double hand_to_target_cm, const IntensityLaw& law) {
    if (!(hand_to_target_cm >= 0.0)) {
        throw Error(ErrorCode::NegativeDistance, "hand-to-target distance must be >= 0");
    }
    const double d_c = law.center_distance_cm;
    if (mode == IntensityMode::Linear) {
        if (hand_to_target_cm > d_c) return law.far_max;
        return kNearMax - (kNearMax - law.far_max) * (hand_to_target_cm / d_c);
    }
    return hand_to_target_cm <= law.zone_fraction * d_c ? kNearMax : law.far_max;
}

double metaphor_intensity(Metaphor metaphor, double motor_distance, double i_max, double floor) {
    if (!(motor_distance >= 0.0 && motor_distance <= 2.0)) {
        throw Error(ErrorCode::OutOfRange, "motor distance outside [0, 2]");
    }
    if (!(i_max > floor && i_max <= kNearMax)) {
        throw Error(ErrorCode::OutOfRange, "I_max outside (floor, 1]");
    }
    if (std::abs(motor_distance - kSqrt2) <= kPerpendicularTolerance) return 0.0;

    // Written so that the aligned end of each map returns I_max bit-exactly.
    double value = 0.0;
    if (metaphor == Metaphor::Pull) {
        if (motor_distance >= kSqrt2) return 0.0;
        value = i_max - (i_max - floor) * (motor_distance / kSqrt2);
    } else {
        if (motor_distance <= kSqrt2) return 0.0;
        value = i_max - (i_max - floor) * ((2.0 - motor_distance) / (2.0 - kSqrt2));
    }
    if (value < floor) return 0.0;
    return std::min(value, kNearMax);
}

VibrationFrame compute_frame(PlanePoint hand, PlanePoint wrist, PlanePoint target, PlanePoint center,
                             const Condition& cond, const IntensityLaw& law, double t) {
    return compute_frame_rotated(hand, hand_rotation(wrist, hand), target, center, cond, law, t);
}

VibrationFrame compute_frame_rotated(PlanePoint hand, double gamma, PlanePoint target,
                                     PlanePoint center, const Condition& cond,
                                     const IntensityLaw& law, double t) {
    const MotorVectors mv = motor_vectors(gamma);
    const double d_h = distance(hand, target);

    IntensityLaw tick_law = law;
    const double d_c = distance(center, target);
    if (d_c > 0.0) tick_law.center_distance_cm = d_c;
    const double i_max = max_intensity(cond.intensity, d_h, tick_law);

    const DirectionVector desired = select_direction(hand, target, cond.approach, mv);
    const PerMotor<double> dists = motor_distances(mv, desired);

    VibrationFrame frame{t, {}};
    for (MotorId m : kMotors) {
        frame[m] = metaphor_intensity(cond.metaphor, dists[index_of(m)], i_max, law.floor);
    }
    return frame;
}

}  // namespace hapnav
