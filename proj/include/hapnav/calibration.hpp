#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hapnav/geometry.hpp"
#include "hapnav/rng.hpp"

namespace hapnav {

enum class Landmark { Deg0, Deg90, Deg180, Deg270, Center };

std::string_view to_string(Landmark l) noexcept;
std::optional<Landmark> parse_landmark(std::string_view s);

inline constexpr std::size_t kMinCaptureSamples = 10;

/// Raw tracker samples recorded while the palm rests on each board landmark.
struct CaptureSet {
    std::vector<PlanePoint> deg0;  ///< top of the circle
    std::vector<PlanePoint> deg90;  ///< right-most point
    std::vector<PlanePoint> deg180;
    std::vector<PlanePoint> deg270;
    std::vector<PlanePoint> center;

    std::vector<PlanePoint>& at(Landmark l);
    const std::vector<PlanePoint>& at(Landmark l) const;
};

/// Board-to-camera correction: the captured top and right points define a
/// skewed angle range [alpha, beta] and the axes of the target ellipse.
/// Angles are signed from the vertical, rightward positive.
struct CalibrationData {
    PlanePoint center{};
    double alpha_rad = 0.0;
    double beta_rad = 0.0;
    double d_top_cm = 35.0;
    double d_right_cm = 35.0;

    /// Nominal circle of `radius` around `center`.
    static CalibrationData identity(double radius_cm = 35.0, PlanePoint center = {});
};

inline constexpr double kTargetAngleMinDeg = 0.0;
inline constexpr double kTargetAngleMaxDeg = 150.0;
inline constexpr double kMinTargetGapDeg = 60.0;
inline constexpr double kAttainRadiusCm = 3.5;
inline constexpr double kMinRigAxisCm = 5.0;

struct TargetSpec {
    double nominal_deg = 0.0;
    double corrected_deg = 0.0;
    PlanePoint position{};
    double attain_radius_cm = kAttainRadiusCm;
};

/// Coordinate-wise median; even counts average the two central order statistics.
/// Throws Error(TooFewSamples) for fewer than two samples.
PlanePoint reduce_capture(std::span<const PlanePoint> samples);

/// Throws Error(TooFewSamples) when any landmark has < 10 samples and
/// Error(DegenerateRig) for short axes, alpha >= beta, or a rig too far from nominal.
CalibrationData build_calibration(const CaptureSet& cs);

/// Remaps theta linearly from [0, 90] onto [alpha, beta] (continued to 150)
/// and places the target on the calibration ellipse.
/// Throws Error(OutOfRangeAngle) outside [0, 150].
TargetSpec place_target(double theta_deg, const CalibrationData& cal);

/// Corrected angle for a nominal one; no range check.
double corrected_angle_deg(double theta_deg, const CalibrationData& cal);

/// Ellipse point at a corrected angle.
PlanePoint ellipse_point(double corrected_deg, const CalibrationData& cal);

/// Uniform over [0, 150] excluding angles within 60 degrees of `prev`.
double next_target_angle(std::optional<double> prev_deg, Rng& rng);

/// Residuals between the model's prediction for the 180/270 landmarks and their captures.
struct CalibrationResiduals {
    PlanePoint predicted_deg180{};
    PlanePoint predicted_deg270{};
    std::optional<double> residual_deg180_cm;
    std::optional<double> residual_deg270_cm;
};

CalibrationResiduals validate_calibration(const CalibrationData& cal, const CaptureSet& cs);

/// Key-value text format: center, alpha_deg, beta_deg, d_top_cm, d_right_cm.
std::string format_calibration(const CalibrationData& cal);
CalibrationData parse_calibration(const std::string& text);
CalibrationData load_calibration(const std::filesystem::path& path);
void save_calibration(const CalibrationData& cal, const std::filesystem::path& path);

/// CSV rows "landmark,x,y" with landmark in {deg0,deg90,deg180,deg270,center}.
CaptureSet load_captures(const std::filesystem::path& path);

}  // namespace hapnav
