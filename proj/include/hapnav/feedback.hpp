#pragma once

#include <cstdint>

#include "hapnav/condition.hpp"
#include "hapnav/geometry.hpp"

namespace hapnav {

/// Constants of the maximum-intensity law and the motor mapping.
struct IntensityLaw {
    double center_distance_cm = 35.0;  ///< nominal center-to-target distance
    double zone_fraction = 0.2;        ///< zone radius as a fraction of the center distance
    double floor = 0.59;               ///< weakest intensity a motor is ever driven at
    double far_max = 0.8;              ///< I_max when the hand is far from the target

    /// Throws Error(InvalidArgument) unless 0 < zone_fraction < 1, 0 < floor < far_max <= 1
    /// and center_distance_cm > 0.
    void validate() const;
};

inline constexpr double kNearMax = 1.0;

/// Motor distances this close to sqrt(2) count as perpendicular (no vibration).
inline constexpr double kPerpendicularTolerance = 1e-9;

/// Commanded drive fraction per motor at one instant.
struct VibrationFrame {
    double t = 0.0;
    PerMotor<double> intensity{};

    double operator[](MotorId m) const { return intensity[index_of(m)]; }
    double& operator[](MotorId m) { return intensity[index_of(m)]; }

    int active_count() const;
    /// Bit i set when motor i is nonzero.
    std::uint8_t active_mask() const;
    bool is_buzz() const;
    bool operator==(const VibrationFrame&) const = default;
};

VibrationFrame buzz_frame(double t);
VibrationFrame silent_frame(double t);

/// Ceiling intensity for this tick given the hand-to-target distance.
/// Linear: 1 - (1 - far_max) * d_h / d_c inside d_c, far_max beyond.
/// Zone: 1 inside (and on) the zone radius, far_max outside.
double max_intensity(IntensityMode mode, double hand_to_target_cm, const IntensityLaw& law);

/// Per-motor intensity from its motor distance. Pull drives motors closer than
/// sqrt(2), push drives motors farther; both map linearly onto (floor, I_max]
/// and return 0 for silent motors.
double metaphor_intensity(Metaphor metaphor, double motor_distance, double i_max,
                          double floor = 0.59);

/// The full per-tick computation from raw joint positions.
VibrationFrame compute_frame(PlanePoint hand, PlanePoint wrist, PlanePoint target, PlanePoint center,
                             const Condition& cond, const IntensityLaw& law, double t);

/// Same as compute_frame with the hand rotation already known.
/// The center-to-target distance used by the intensity law is measured from
/// `center`; law.center_distance_cm is only the fallback for target == center.
VibrationFrame compute_frame_rotated(PlanePoint hand, double gamma, PlanePoint target,
                                     PlanePoint center, const Condition& cond,
                                     const IntensityLaw& law, double t);

}  // namespace hapnav
