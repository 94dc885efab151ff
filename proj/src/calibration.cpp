#include "hapnav/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "hapnav/errors.hpp"

namespace hapnav {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double to_rad(double deg) { return deg / kDegPerRad; }
double to_deg(double rad) { return rad * kDegPerRad; }

double median(std::vector<double> values) {
    const std::size_t n = values.size();
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    const double upper = *mid;
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad number for " + what + ": '" + text + "'");
    }
}

}  // namespace

std::string_view to_string(Landmark l) noexcept {
    switch (l) {
        case Landmark::Deg0: return "deg0";
        case Landmark::Deg90: return "deg90";
        case Landmark::Deg180: return "deg180";
        case Landmark::Deg270: return "deg270";
        case Landmark::Center: return "center";
    }
    return "?";
}

std::optional<Landmark> parse_landmark(std::string_view s) {
    for (Landmark l : {Landmark::Deg0, Landmark::Deg90, Landmark::Deg180, Landmark::Deg270,
                       Landmark::Center}) {
        if (s == to_string(l)) return l;
    }
    return std::nullopt;
}

std::vector<PlanePoint>& CaptureSet::at(Landmark l) {
    return const_cast<std::vector<PlanePoint>&>(std::as_const(*this).at(l));
}

const std::vector<PlanePoint>& CaptureSet::at(Landmark l) const {
    switch (l) {
        case Landmark::Deg0: return deg0;
        case Landmark::Deg90: return deg90;
        case Landmark::Deg180: return deg180;
        case Landmark::Deg270: return deg270;
        case Landmark::Center: break;
    }
    return center;
}

CalibrationData CalibrationData::identity(double radius_cm, PlanePoint center) {
    return {center, 0.0, std::numbers::pi / 2.0, radius_cm, radius_cm};
}

PlanePoint reduce_capture(std::span<const PlanePoint> samples) {
    if (samples.size() < 2) {
        throw Error(ErrorCode::TooFewSamples, "need at least 2 capture samples");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(samples.size());
    ys.reserve(samples.size());
    for (const PlanePoint& p : samples) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorCode::InvalidArgument, "non-finite capture sample");
        }
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    return {median(std::move(xs)), median(std::move(ys))};
}

CalibrationData build_calibration(const CaptureSet& cs) {
    for (Landmark l : {Landmark::Deg0, Landmark::Deg90, Landmark::Center}) {
        if (cs.at(l).size() < kMinCaptureSamples) {
            throw Error(ErrorCode::TooFewSamples,
                        std::string(to_string(l)) + " has fewer than 10 samples");
        }
    }
    const PlanePoint center = reduce_capture(cs.center);
    const PlanePoint top = reduce_capture(cs.deg0) - center;
    const PlanePoint right = reduce_capture(cs.deg90) - center;

    CalibrationData cal;
    cal.center = center;
    cal.d_top_cm = norm(top);
    cal.d_right_cm = norm(right);
    if (cal.d_top_cm < kMinRigAxisCm || cal.d_right_cm < kMinRigAxisCm) {
        throw Error(ErrorCode::DegenerateRig, "captured landmarks closer than 5 cm to center");
    }
    cal.alpha_rad = std::atan2(top.x, top.y);
    cal.beta_rad = std::atan2(right.x, right.y);
    const double quarter = std::numbers::pi / 4.0;
    if (!(cal.alpha_rad < cal.beta_rad) || std::abs(cal.alpha_rad) >= quarter ||
        std::abs(cal.beta_rad - 2.0 * quarter) >= quarter) {
        throw Error(ErrorCode::DegenerateRig, "captured skew angles far from the nominal rig");
    }
    return cal;
}

double corrected_angle_deg(double theta_deg, const CalibrationData& cal) {
    const double alpha = to_deg(cal.alpha_rad);
    const double beta = to_deg(cal.beta_rad);
    return theta_deg * (beta - alpha) / 90.0 + alpha;
}

PlanePoint ellipse_point(double corrected_deg, const CalibrationData& cal) {
    const double a = to_rad(corrected_deg);
    return cal.center + PlanePoint{cal.d_right_cm * std::sin(a), cal.d_top_cm * std::cos(a)};
}

TargetSpec place_target(double theta_deg, const CalibrationData& cal) {
    if (!(theta_deg >= kTargetAngleMinDeg && theta_deg <= kTargetAngleMaxDeg)) {
        throw Error(ErrorCode::OutOfRangeAngle, "target angle outside [0, 150] degrees");
    }
    TargetSpec spec;
    spec.nominal_deg = theta_deg;
    spec.corrected_deg = corrected_angle_deg(theta_deg, cal);
    spec.position = ellipse_point(spec.corrected_deg, cal);
    return spec;
}

double next_target_angle(std::optional<double> prev_deg, Rng& rng) {
    for (;;) {
        const double theta = rng.uniform(kTargetAngleMinDeg, kTargetAngleMaxDeg);
        if (!prev_deg || std::abs(theta - *prev_deg) >= kMinTargetGapDeg) return theta;
    }
}

CalibrationResiduals validate_calibration(const CalibrationData& cal, const CaptureSet& cs) {
    CalibrationResiduals out;
    out.predicted_deg180 = ellipse_point(corrected_angle_deg(180.0, cal), cal);
    out.predicted_deg270 = ellipse_point(corrected_angle_deg(270.0, cal), cal);
    if (cs.deg180.size() >= 2) {
        out.residual_deg180_cm = distance(out.predicted_deg180, reduce_capture(cs.deg180));
    }
    if (cs.deg270.size() >= 2) {
        out.residual_deg270_cm = distance(out.predicted_deg270, reduce_capture(cs.deg270));
    }
    return out;
}

std::string format_calibration(const CalibrationData& cal) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "# hapnav calibration v1\n";
    os << "center = " << cal.center.x << " " << cal.center.y << "\n";
    os << "alpha_deg = " << to_deg(cal.alpha_rad) << "\n";
    os << "beta_deg = " << to_deg(cal.beta_rad) << "\n";
    os << "d_top_cm = " << cal.d_top_cm << "\n";
    os << "d_right_cm = " << cal.d_right_cm << "\n";
    return os.str();
}

CalibrationData parse_calibration(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ParseError, "calibration line without '=': " + t);
        }
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    auto need = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw Error(ErrorCode::ParseError, "calibration missing key " + key);
        return it->second;
    };

    CalibrationData cal;
    std::istringstream center(need("center"));
    std::string cx;
    std::string cy;
    center >> cx >> cy;
    cal.center = {parse_number(cx, "center x"), parse_number(cy, "center y")};
    cal.alpha_rad = to_rad(parse_number(need("alpha_deg"), "alpha_deg"));
    cal.beta_rad = to_rad(parse_number(need("beta_deg"), "beta_deg"));
    cal.d_top_cm = parse_number(need("d_top_cm"), "d_top_cm");
    cal.d_right_cm = parse_number(need("d_right_cm"), "d_right_cm");
    if (!(cal.d_top_cm > 0.0 && cal.d_right_cm > 0.0 && cal.alpha_rad < cal.beta_rad)) {
        throw Error(ErrorCode::DegenerateRig, "calibration file describes a degenerate rig");
    }
    return cal;
}

CalibrationData load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open calibration " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_calibration(buf.str());
}

void save_calibration(const CalibrationData& cal, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write calibration " + path.string());
    out << format_calibration(cal);
}

CaptureSet load_captures(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open captures " + path.string());
    CaptureSet cs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#' || t.rfind("landmark", 0) == 0) continue;
        std::vector<std::string> cols;
        std::istringstream row(t);
        std::string cell;
        while (std::getline(row, cell, ',')) cols.push_back(trim(cell));
        const auto where = path.string() + ":" + std::to_string(line_no);
        if (cols.size() != 3) throw Error(ErrorCode::SchemaMismatch, where + ": expected 3 columns");
        const auto landmark = parse_landmark(cols[0]);
        if (!landmark) throw Error(ErrorCode::ParseError, where + ": unknown landmark " + cols[0]);
        cs.at(*landmark).push_back({parse_number(cols[1], where), parse_number(cols[2], where)});
    }
    return cs;
}

}  // namespace hapnav
