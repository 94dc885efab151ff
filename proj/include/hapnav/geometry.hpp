#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hapnav {

/// A point or displacement on the scene plane, in centimeters.
/// `y` is "up" in the vertical layout and "away from the body" in the
/// horizontal one.
struct PlanePoint {
    double x = 0.0;
    double y = 0.0;

    constexpr PlanePoint operator+(PlanePoint o) const { return {x + o.x, y + o.y}; }
    constexpr PlanePoint operator-(PlanePoint o) const { return {x - o.x, y - o.y}; }
    constexpr PlanePoint operator-() const { return {-x, -y}; }
    constexpr PlanePoint operator*(double s) const { return {x * s, y * s}; }
    friend constexpr PlanePoint operator*(double s, PlanePoint p) { return p * s; }
    PlanePoint& operator+=(PlanePoint o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr bool operator==(const PlanePoint&) const = default;
};

inline constexpr double kMaxCoordinateCm = 500.0;

constexpr double dot(PlanePoint a, PlanePoint b) { return a.x * b.x + a.y * b.y; }
inline double norm(PlanePoint p) { return std::hypot(p.x, p.y); }
inline double distance(PlanePoint a, PlanePoint b) { return norm(b - a); }

/// Counter-clockwise rotation by `angle` radians in the standard (x right, y up) frame.
inline PlanePoint rotate(PlanePoint p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// True when both coordinates are finite and inside the desk-scale sanity bound.
bool is_valid(PlanePoint p) noexcept;

/// The four tactors on the dorsal hand.
/// A: middle-finger proximal phalanx (up), B: carpal (down),
/// C: ulnar metacarpal (right), D: radial metacarpal (left).
enum class MotorId : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

inline constexpr std::array<MotorId, 4> kMotors{MotorId::A, MotorId::B, MotorId::C, MotorId::D};

constexpr std::size_t index_of(MotorId m) { return static_cast<std::size_t>(m); }

constexpr MotorId opposite(MotorId m) {
    switch (m) {
        case MotorId::A: return MotorId::B;
        case MotorId::B: return MotorId::A;
        case MotorId::C: return MotorId::D;
        case MotorId::D: return MotorId::C;
    }
    return m;
}

std::string_view to_string(MotorId m) noexcept;

template <typename T>
using PerMotor = std::array<T, 4>;

/// Motor unit vectors in plane coordinates for a given hand rotation.
struct MotorVectors {
    PerMotor<PlanePoint> v{};

    const PlanePoint& operator[](MotorId m) const { return v[index_of(m)]; }
};

/// A unit direction on the plane. Construction checks the norm.
class DirectionVector {
public:
    static constexpr double kUnitTolerance = 1e-6;

    /// Throws Error(NotUnit) if |v| deviates from 1 by more than kUnitTolerance.
    explicit DirectionVector(PlanePoint v);

    /// Normalizes `v`; throws Error(DegenerateTarget) for a zero vector.
    static DirectionVector normalized(PlanePoint v);

    PlanePoint value() const { return v_; }
    double x() const { return v_.x; }
    double y() const { return v_.y; }

private:
    struct Trusted {};
    DirectionVector(PlanePoint v, Trusted) : v_(v) {}
    PlanePoint v_;
};

enum class Approach : std::uint8_t { TwoTactor, WorstAxis };

inline constexpr double kMinWristHandCm = 0.5;

/// In-plane hand tilt from the wrist->hand vector. Zero when the hand points
/// straight "up" from the wrist; positive is clockwise as seen by a camera
/// facing the back of the hand. Result lies in (-pi, pi].
/// Throws Error(DegeneratePose) when the two joints are within 0.5 cm.
double hand_rotation(PlanePoint wrist, PlanePoint hand);

/// v_A = (sin g, cos g), v_B = -v_A, v_C = (cos g, -sin g), v_D = -v_C.
MotorVectors motor_vectors(double gamma);

/// Euclidean distance of each motor vector to the desired direction, in [0, 2].
PerMotor<double> motor_distances(const MotorVectors& mv, const DirectionVector& d);

/// Desired movement direction. Two-tactor points straight at the target;
/// worst-axis snaps to the motor vector closest to that line (ties: A<B<C<D).
DirectionVector select_direction(PlanePoint hand, PlanePoint target, Approach approach,
                                 const MotorVectors& mv);

/// Index of the motor vector closest to `v` under the fixed tie order.
MotorId closest_motor(const MotorVectors& mv, PlanePoint v);

}  // namespace hapnav
