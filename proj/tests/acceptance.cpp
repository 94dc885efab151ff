// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails; a criterion that cannot run here reports SKIPPED.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <nlohmann/json.hpp>

#include "hapnav/analysis.hpp"
#include "hapnav/calibration.hpp"
#include "hapnav/cli.hpp"
#include "hapnav/errors.hpp"
#include "hapnav/feedback.hpp"
#include "hapnav/protocol.hpp"
#include "hapnav/rng.hpp"
#include "hapnav/server.hpp"
#include "hapnav/session.hpp"
#include "hapnav/simagent.hpp"
#include "hapnav/stats.hpp"
#include "hapnav/trial_log.hpp"

using namespace hapnav;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// Pinned tolerances.
constexpr double kDecimals4 = 0.5e-4;
constexpr double kEquivarianceTol = 1e-9;
constexpr double kOraclePctTol = 0.5;
constexpr double kCalibrationTol = 1e-9;
constexpr double kSignificance = 0.01;
constexpr double kDirectionalBudgetS = 60.0;
constexpr double kLatencyP99Ms = 5.0;
constexpr int kPropertyCases = 10000;
constexpr int kOraclePolylines = 1000;
constexpr int kOracleSamples = 10000;
constexpr int kTrialsPerCombo = 200;
constexpr int kFuzzLines = 100000;
constexpr int kPermutationShuffles = 10000;

enum class Verdict { Pass, Fail, Skipped };

struct Result {
    Verdict verdict = Verdict::Fail;
    std::string detail;
};

struct Check {
    bool ok = true;
    std::string first_failure;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) first_failure = what;
        ok = ok && cond;
    }
    Result done(const std::string& summary) const {
        return {ok ? Verdict::Pass : Verdict::Fail, ok ? summary : first_failure};
    }
};

bool at4(double got, double want) { return std::abs(got - want) < kDecimals4; }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Condition combo(Approach a, Metaphor m, IntensityMode i) { return {Layout::Horizontal, a, m, i}; }

Result engine_unit_suite() {
    Check c;
    const IntensityLaw law;
    c.expect(hand_rotation({0, 0}, {0, 10}) == 0.0, "gamma aligned");
    c.expect(at4(hand_rotation({0, 0}, {10, 0}), kPi / 2), "gamma +pi/2");
    c.expect(at4(hand_rotation({0, 0}, {10, 10}), kPi / 4), "gamma +pi/4");
    const auto m30 = motor_vectors(kPi / 6);
    c.expect(at4(m30[MotorId::A].x, 0.5) && at4(m30[MotorId::A].y, 0.8660), "v_A at 30 deg");
    const auto m90 = motor_vectors(kPi / 2);
    c.expect(at4(m90[MotorId::C].y, -1.0) && at4(m90[MotorId::D].y, 1.0), "motor vectors at 90 deg");
    const auto d0 = motor_distances(motor_vectors(0), DirectionVector({1, 0}));
    c.expect(at4(d0[0], kSqrt2) && at4(d0[1], kSqrt2) && d0[2] == 0.0 && d0[3] == 2.0, "axis distances");
    const auto d45 = motor_distances(motor_vectors(0), DirectionVector::normalized({1, 1}));
    c.expect(at4(d45[0], 0.7654) && at4(d45[2], 0.7654) && at4(d45[1], 1.8478) && at4(d45[3], 1.8478),
             "diagonal distances");
    const auto d90 = motor_distances(m90, DirectionVector({1, 0}));
    c.expect(at4(d90[0], 0) && at4(d90[1], 2) && at4(d90[2], kSqrt2), "rotated distances");
    const auto mv = motor_vectors(0);
    c.expect(select_direction({0, 0}, {5, 1}, Approach::WorstAxis, mv).value() == mv[MotorId::C], "worst axis C");
    c.expect(select_direction({0, 0}, {0, -7}, Approach::WorstAxis, mv).value() == mv[MotorId::B], "worst axis B");
    const auto tt = select_direction({0, 0}, {3, 4}, Approach::TwoTactor, mv);
    c.expect(at4(tt.x(), 0.6) && at4(tt.y(), 0.8), "two-tactor 3-4-5");
    c.expect(max_intensity(IntensityMode::Linear, 0, law) == 1.0, "linear at 0");
    c.expect(at4(max_intensity(IntensityMode::Linear, 35, law), 0.8), "linear at d_c");
    c.expect(at4(max_intensity(IntensityMode::Linear, 17.5, law), 0.9), "linear at d_c/2");
    c.expect(max_intensity(IntensityMode::Zone, 10, law) == 0.8 && max_intensity(IntensityMode::Zone, 6.9, law) == 1.0,
             "zone");
    // boundary values are exact, not rounded
    c.expect(metaphor_intensity(Metaphor::Pull, 0, 0.8) == 0.8, "pull at 0");
    c.expect(metaphor_intensity(Metaphor::Pull, kSqrt2, 0.8) == 0.0, "pull at sqrt2");
    c.expect(metaphor_intensity(Metaphor::Pull, 2, 1.0) == 0.0, "pull at 2");
    c.expect(metaphor_intensity(Metaphor::Push, 2, 0.8) == 0.8, "push at 2");
    c.expect(metaphor_intensity(Metaphor::Push, kSqrt2, 1.0) == 0.0, "push at sqrt2");
    c.expect(metaphor_intensity(Metaphor::Push, 0, 1.0) == 0.0, "push at 0");
    c.expect(at4(metaphor_intensity(Metaphor::Pull, 0.7654, 1.0), 0.7781), "pull at 0.7654");
    c.expect(at4(metaphor_intensity(Metaphor::Push, 1.8, 1.0), 0.8600), "push at 1.8");
    const auto fp = compute_frame({0, 0}, {0, -10}, {35, 0}, {0, 0}, combo(Approach::WorstAxis, Metaphor::Pull, IntensityMode::Linear), law, 0);
    c.expect(fp.active_count() == 1 && at4(fp[MotorId::C], 0.8), "composed pull frame");
    const auto fu = compute_frame({0, 0}, {0, -10}, {35, 0}, {0, 0}, combo(Approach::WorstAxis, Metaphor::Push, IntensityMode::Linear), law, 0);
    c.expect(fu.active_count() == 1 && at4(fu[MotorId::D], 0.8), "composed push frame");
    const auto f2 = compute_frame({0, 0}, {0, -10}, {24.75, 24.75}, {0, 0}, combo(Approach::TwoTactor, Metaphor::Pull, IntensityMode::Linear), law, 0);
    c.expect(f2.active_count() == 2 && at4(f2[MotorId::A], 0.6863) && f2[MotorId::A] == f2[MotorId::C],
             "composed two-tactor frame");
    return c.done("all worked examples to 4 dp, boundaries exact");
}

Result property_suite() {
    Check c;
    Rng rng(1001);
    const IntensityLaw law;
    for (int k = 0; k < kPropertyCases && c.ok; ++k) {
        const double gamma = rng.uniform(-kPi, kPi);
        const PlanePoint hand{rng.uniform(-60, 60), rng.uniform(-60, 60)};
        const PlanePoint target{rng.uniform(-40, 40), rng.uniform(-40, 40)};
        if (distance(hand, target) < 1e-6) continue;
        const Metaphor metaphor = rng.bernoulli(0.5) ? Metaphor::Pull : Metaphor::Push;
        const IntensityMode mode = rng.bernoulli(0.5) ? IntensityMode::Linear : IntensityMode::Zone;
        const auto wa = compute_frame_rotated(hand, gamma, target, {0, 0}, combo(Approach::WorstAxis, metaphor, mode), law, 0);
        const auto tt = compute_frame_rotated(hand, gamma, target, {0, 0}, combo(Approach::TwoTactor, metaphor, mode), law, 0);
        for (const auto& f : {wa, tt}) {
            for (double v : f.intensity) c.expect(v == 0.0 || (v >= 0.59 && v <= 1.0), "intensity range");
        }
        c.expect(wa.active_count() == 1, "worst-axis single motor");
        c.expect(tt.active_count() >= 1 && tt.active_count() <= 2, "two-tactor active count");
        for (MotorId m : kMotors) c.expect(!(tt[m] > 0 && tt[opposite(m)] > 0), "two-tactor opposite pair");
    }
    for (int k = 0; k < kPropertyCases && c.ok; ++k) {
        const double gamma = rng.uniform(-kPi, kPi);
        const double phi = rng.uniform(-kPi, kPi);
        const DirectionVector d({std::cos(phi), std::sin(phi)});
        const auto a = motor_distances(motor_vectors(gamma), d);
        const auto b = motor_distances(motor_vectors(0), DirectionVector::normalized(rotate(d.value(), gamma)));
        for (int m = 0; m < 4; ++m) c.expect(std::abs(a[m] - b[m]) < kEquivarianceTol, "rotation equivariance");
    }
    for (int k = 0; k < kPropertyCases && c.ok; ++k) {
        const double x = rng.uniform(0, 80);
        const double y = rng.uniform(0, 80);
        c.expect(max_intensity(IntensityMode::Linear, std::min(x, y), law) >=
                     max_intensity(IntensityMode::Linear, std::max(x, y), law),
                 "linear monotonicity");
    }
    return c.done(std::to_string(kPropertyCases) + " cases per property");
}

double resampled_pct(const std::vector<PlanePoint>& pts, const CriticalRegion& region) {
    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) cum.push_back(cum.back() + distance(pts[i - 1], pts[i]));
    int inside = 0;
    std::size_t seg = 1;
    for (int k = 0; k < kOracleSamples; ++k) {
        const double s = cum.back() * (k + 0.5) / kOracleSamples;
        while (seg + 1 < cum.size() && cum[seg] < s) ++seg;
        const double len = cum[seg] - cum[seg - 1];
        const double f = len > 0 ? (s - cum[seg - 1]) / len : 0.0;
        const PlanePoint p = pts[seg - 1] + (pts[seg] - pts[seg - 1]) * f;
        if (distance(p, region.center) <= region.radius_cm) ++inside;
    }
    return 100.0 * inside / kOracleSamples;
}

Result metric_oracle() {
    Check c;
    Rng rng(1002);
    double worst = 0.0;
    for (int k = 0; k < kOraclePolylines; ++k) {
        const PlanePoint target{rng.uniform(-35, 35), rng.uniform(-35, 35)};
        const auto region = CriticalRegion::between({0, 0}, target);
        std::vector<PlanePoint> pts{{0, 0}};
        const int n = 2 + static_cast<int>(rng.index(30));
        for (int i = 0; i < n; ++i) pts.push_back(pts.back() + PlanePoint{rng.normal(0, 8), rng.normal(0, 8)});
        worst = std::max(worst, std::abs(pct_in_critical(pts, region) - resampled_pct(pts, region)));
    }
    c.expect(worst < kOraclePctTol, fmt("oracle gap %.4f pp", worst));
    const auto target = place_target(90, CalibrationData::identity());
    const std::vector<PlanePoint> straight{{0, 0}, target.position};
    const double pct = pct_in_critical(straight, CriticalRegion::between({0, 0}, target.position));
    const double len = path_length(straight);
    c.expect(pct == 100.0, fmt("straight path %.12f%%", pct));
    c.expect(std::abs(len - 35.0) < 1e-12, fmt("straight length %.12f", len));
    return c.done(fmt("max gap %.4f pp over 1000 polylines; straight path 100%% and 35 cm", worst));
}

Result calibration_roundtrip() {
    Check c;
    Rng rng(1003);
    constexpr double deg = kPi / 180.0;
    double worst = 0.0;
    for (int k = 0; k < kPropertyCases; ++k) {
        const PlanePoint center{rng.uniform(-20, 20), rng.uniform(-20, 20)};
        const double alpha = rng.uniform(-30, 30) * deg;
        const double beta = rng.uniform(60, 120) * deg;
        const double d_top = rng.uniform(20, 50);
        const double d_right = rng.uniform(20, 50);
        CaptureSet cs;
        for (int i = 0; i < 10; ++i) {
            cs.deg0.push_back(center + PlanePoint{d_top * std::sin(alpha), d_top * std::cos(alpha)});
            cs.deg90.push_back(center + PlanePoint{d_right * std::sin(beta), d_right * std::cos(beta)});
            cs.center.push_back(center);
        }
        const auto cal = build_calibration(cs);
        worst = std::max({worst, std::abs(cal.alpha_rad - alpha), std::abs(cal.beta_rad - beta),
                          std::abs(cal.d_top_cm - d_top), std::abs(cal.d_right_cm - d_right)});
    }
    c.expect(worst < kCalibrationTol, fmt("rig recovery error %.3g", worst));
    const auto id = CalibrationData::identity();
    double circle = 0.0;
    for (int k = 0; k <= 1500; ++k) {
        const double theta = k * 0.1;
        const auto t = place_target(theta, id);
        circle = std::max(circle, distance(t.position, {35 * std::sin(theta * deg), 35 * std::cos(theta * deg)}));
    }
    c.expect(circle < kCalibrationTol, fmt("identity circle error %.3g", circle));
    return c.done(fmt("rig recovery error %.2g, identity circle error %.2g", worst, circle));
}

Result directional_reproduction() {
    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t seed = 2024;
    // Every combo sees the same targets and the same trial seeds.
    std::vector<TrialPlan> plans;
    for (Layout layout : {Layout::Horizontal, Layout::Vertical}) {
        for (const Condition& cond : strategy_combos(layout)) {
            for (int i = 0; i < kTrialsPerCombo / 2; ++i) {
                TrialPlan p;
                p.participant = 1;
                p.index = i + 1 + (layout == Layout::Vertical ? kTrialsPerCombo / 2 : 0);
                Rng angle_rng(mix_seed(seed, static_cast<std::uint64_t>(p.index)));
                p.condition = cond;
                p.target = place_target(angle_rng.uniform(0.0, 150.0), CalibrationData::identity());
                plans.push_back(p);
            }
        }
    }
    const auto records = run_batch(plans, CalibrationData::identity(), AgentParams{}, seed);
    SummarizeOptions opts;
    opts.permutation_shuffles = kPermutationShuffles;
    opts.permutation_seed = seed;
    const auto report = summarize(records, {Factor::Approach, Factor::Metaphor, Factor::Intensity}, opts);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    int timeouts = 0;
    for (const auto& r : records) timeouts += r.outcome == Outcome::Timeout ? 1 : 0;
    auto diff = [&](Factor f) {
        for (const auto& d : report.differences) {
            if (d.factor == f && d.metric == Metric::CompletionTime) return d;
        }
        throw Error(ErrorCode::EmptyGroup, "missing difference");
    };
    const auto approach = diff(Factor::Approach);   // two_tactor - worst_axis
    const auto metaphor = diff(Factor::Metaphor);   // push - pull
    const auto intensity = diff(Factor::Intensity); // linear - zone
    Check c;
    c.expect(approach.mean_b < approach.mean_a && approach.p_value < kSignificance,
             fmt("worst-axis %.3f s vs two-tactor %.3f s, p=%.4f", approach.mean_b, approach.mean_a, approach.p_value));
    c.expect(metaphor.mean_b < metaphor.mean_a && metaphor.p_value < kSignificance,
             fmt("pull %.3f s vs push %.3f s, p=%.4f", metaphor.mean_b, metaphor.mean_a, metaphor.p_value));
    c.expect(intensity.p_value >= kSignificance, fmt("intensity effect p=%.4f", intensity.p_value));
    c.expect(elapsed < kDirectionalBudgetS, fmt("runtime %.1f s", elapsed));
    std::string summary = fmt("worst-axis %.3f < two-tactor %.3f s (p=%.4f); ", approach.mean_b, approach.mean_a, approach.p_value);
    summary += fmt("pull %.3f < push %.3f s (p=%.4f); ", metaphor.mean_b, metaphor.mean_a, metaphor.p_value);
    summary += fmt("intensity p=%.4f; %.1f s", intensity.p_value, elapsed);
    summary += "; " + std::to_string(records.size()) + " trials, " + std::to_string(timeouts) + " timeouts";
    return c.done(summary);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Result determinism() {
    const fs::path dir = fs::temp_directory_path() / "hapnav_acceptance_determinism";
    fs::remove_all(dir);
    std::ostringstream sink;
    Check c;
    for (const char* run : {"a", "b"}) {
        const int code = run_cli({"simulate", "--trials", "48", "--seed", "7", "--out", (dir / run).string()}, sink, sink);
        c.expect(code == 0, std::string("simulate exit ") + std::to_string(code));
    }
    int files = 0;
    int matches = 0;
    for (const auto& path : list_trial_logs(dir / "a")) {
        ++files;
        c.expect(slurp(path) == slurp(dir / "b" / path.filename()), "logs differ: " + path.filename().string());
        std::ostringstream out;
        const int code = run_cli({"replay", "--log", path.string()}, out, out);
        if (code == 0 && out.str().rfind("MATCH", 0) == 0) ++matches;
        else c.expect(false, "replay: " + out.str());
    }
    c.expect(files == 48, "expected 48 logs");
    fs::remove_all(dir);
    return c.done(std::to_string(files) + " logs byte-identical, " + std::to_string(matches) + " replays MATCH");
}

Result schedule_audit() {
    Check c;
    for (int participant = 1; participant <= 100; ++participant) {
        const auto plans = schedule(participant, 99);
        c.expect(plans.size() == 48, "schedule size");
        for (int block = 0; block < 2 && plans.size() == 48; ++block) {
            int counts[8] = {};
            const Layout layout = plans[block * 24].condition.layout;
            for (int i = block * 24; i < block * 24 + 24; ++i) {
                c.expect(plans[i].condition.layout == layout, "mixed layout block");
                ++counts[strategy_index(plans[i].condition)];
            }
            for (int n : counts) c.expect(n == 3, "combo count per block");
        }
        c.expect(plans[0].condition.layout != plans[24].condition.layout, "blocks share a layout");
        for (std::size_t i = 1; i < plans.size(); ++i) {
            c.expect(std::abs(plans[i].target.nominal_deg - plans[i - 1].target.nominal_deg) >= 60.0, "target gap < 60");
        }
    }
    return c.done("100 participants: 24+24 layout blocks, 3 per combo, gaps >= 60 deg");
}

Result gateway_robustness() {
    Check c;
    // Handler-level fuzz.
    Rng rng(1004);
    auto config = std::make_shared<const GatewayConfig>();
    ProtocolHandler handler(config);
    const std::vector<std::string> seeds{
        R"({"type":"hello","v":1})",
        R"({"type":"configure","v":1,"condition":{"layout":"vertical","approach":"two_tactor","metaphor":"push","intensity":"zone"},"target_deg":40})",
        R"({"type":"pose","v":1,"t":0.5,"hand":[1,2]})", R"({"type":"abort","v":1})",
        R"({"type":"configure","v":1,"mode":"simulated","trial":2})"};
    const std::string alphabet = "{}[]\":,.-0123456789eE tfnluras\\\x01\xff";
    int errors = 0;
    int crashes = 0;
    for (int k = 0; k < kFuzzLines; ++k) {
        std::string line;
        if (rng.bernoulli(0.4)) {
            const std::size_t n = rng.index(100);
            for (std::size_t i = 0; i < n; ++i) line.push_back(static_cast<char>(rng.index(256)));
        } else {
            line = seeds[rng.index(seeds.size())];
            for (std::size_t e = rng.index(5); e > 0 && !line.empty(); --e) {
                line[rng.index(line.size())] = alphabet[rng.index(alphabet.size())];
            }
        }
        try {
            const HandlerOutput out = handler.handle_line(line);
            for (const auto& l : out.lines) {
                const auto j = nlohmann::json::parse(l, nullptr, false);
                if (j.is_discarded() || !j.contains("type")) ++crashes;
                else if (j["type"] == "error") ++errors;
            }
            if (out.close) handler = ProtocolHandler(config);
        } catch (...) {
            ++crashes;
        }
    }
    c.expect(crashes == 0, std::to_string(crashes) + " fuzz lines escaped the protocol");

    // Pose-to-frame latency over a real connection at 30 Hz.
    namespace asio = boost::asio;
    using tcp = asio::ip::tcp;
    Server server(GatewayConfig{}, {"127.0.0.1:0", {}});
    std::thread runner([&] { server.run(); });
    int raw_bursts = 0;
    for (int k = 0; k < 50; ++k) {
        asio::io_context io;
        tcp::socket sock(io);
        sock.connect({asio::ip::make_address("127.0.0.1"), server.port()});
        std::string junk(1 + rng.index(4096), '\0');
        for (char& ch : junk) ch = static_cast<char>(rng.index(256));
        boost::system::error_code ec;
        asio::write(sock, asio::buffer(junk), ec);
        sock.shutdown(tcp::socket::shutdown_both, ec);
        ++raw_bursts;
    }
    std::vector<double> latency_ms;
    {
        asio::io_context io;
        tcp::socket sock(io);
        sock.connect({asio::ip::make_address("127.0.0.1"), server.port()});
        sock.set_option(tcp::no_delay(true));
        asio::streambuf buf;
        std::istream in(&buf);
        std::string reply;
        auto send = [&](const std::string& line) { asio::write(sock, asio::buffer(line + "\n")); };
        auto read_until_type = [&](const std::string& type) {
            for (;;) {
                asio::read_until(sock, buf, '\n');
                std::getline(in, reply);
                if (reply.find("\"type\":\"" + type + "\"") != std::string::npos) return;
            }
        };
        send(R"({"type":"hello","v":1})");
        read_until_type("hello");
        send(R"({"type":"configure","v":1,"condition":{"layout":"horizontal","approach":"two_tactor","metaphor":"pull","intensity":"linear"},"target_deg":90})");
        read_until_type("trial_state");
        constexpr int kPoses = 300;
        const auto period = std::chrono::microseconds(33333);
        auto next = std::chrono::steady_clock::now();
        for (int k = 0; k < kPoses; ++k) {
            const double phase = 2 * kPi * k / 90.0;
            // circle of 2 cm around the board center: armed, never near the target
            nlohmann::json pose{{"type", "pose"}, {"v", 1}, {"t", k / 30.0},
                                {"hand", {2 * std::cos(phase), 2 * std::sin(phase)}}};
            std::this_thread::sleep_until(next);
            next += period;
            const auto t0 = std::chrono::steady_clock::now();
            send(pose.dump());
            read_until_type("frame");
            latency_ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        }
    }
    server.stop();
    runner.join();
    std::sort(latency_ms.begin(), latency_ms.end());
    const double p99 = latency_ms[static_cast<std::size_t>(std::ceil(0.99 * latency_ms.size())) - 1];
    c.expect(p99 < kLatencyP99Ms, fmt("p99 latency %.3f ms", p99));
    return c.done(std::to_string(kFuzzLines) + " fuzz lines, 0 crashes, " + std::to_string(errors) +
                  " error replies, " + std::to_string(raw_bursts) +
                  " raw TCP bursts; p99 pose->frame " + fmt("%.3f ms over 300 poses at 30 Hz", p99));
}

Result dataset_check() {
    const char* dir = std::getenv("HAPNAV_DATASET_DIR");
    const char* schema = std::getenv("HAPNAV_DATASET_SCHEMA");
    if (!dir || !schema) {
        return {Verdict::Skipped, "set HAPNAV_DATASET_DIR and HAPNAV_DATASET_SCHEMA to ingest the public trajectories"};
    }
    Check c;
    const auto result = ingest_dataset(dir, DatasetSchema::load(schema));
    int reached = 0;
    for (const auto& rec : result.records) {
        const auto m = compute_metrics(rec);
        if (m.path_length_cm) c.expect(std::isfinite(*m.path_length_cm), "non-finite path length");
        if (m.pct_critical) c.expect(*m.pct_critical >= 0 && *m.pct_critical <= 100, "pct out of [0, 100]");
        if (rec.outcome == Outcome::Reached && m.path_length_cm) {
            ++reached;
            const double straight = distance(rec.center, rec.plan.target.position);
            c.expect(*m.path_length_cm >= straight - rec.engine.attain_radius_cm - 1e-9, "path shorter than the straight line");
        }
    }
    return c.done(std::to_string(result.files) + " files, " + std::to_string(result.records.size()) + " trials, " +
                  std::to_string(reached) + " reached, " + std::to_string(result.warnings.size()) + " warnings");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"engine_unit_suite", engine_unit_suite},
        {"property_suite", property_suite},
        {"metric_oracle", metric_oracle},
        {"calibration_roundtrip", calibration_roundtrip},
        {"directional_reproduction", directional_reproduction},
        {"determinism", determinism},
        {"schedule_audit", schedule_audit},
        {"gateway_robustness", gateway_robustness},
        {"dataset_check", dataset_check},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Result o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {Verdict::Fail, std::string("exception: ") + e.what()};
        }
        const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIPPED";
        std::printf("%-7s %-26s %s\n", tag, name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (o.verdict == Verdict::Fail) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
