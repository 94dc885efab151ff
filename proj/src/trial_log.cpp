#include "hapnav/trial_log.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hapnav/errors.hpp"

namespace hapnav {

using nlohmann::json;

namespace {

json point_json(PlanePoint p) { return json::array({p.x, p.y}); }

PlanePoint point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json condition_json(const Condition& c) {
    return {{"layout", to_string(c.layout)},
            {"approach", to_string(c.approach)},
            {"metaphor", to_string(c.metaphor)},
            {"intensity", to_string(c.intensity)}};
}

template <typename T>
T parse_enum(const json& j, std::optional<T> (*parser)(std::string_view), const char* what) {
    const auto value = parser(j.get<std::string>());
    if (!value) throw std::invalid_argument(std::string("bad ") + what);
    return *value;
}

Condition condition_from(const json& j) {
    return {parse_enum(j.at("layout"), parse_layout, "layout"),
            parse_enum(j.at("approach"), parse_approach, "approach"),
            parse_enum(j.at("metaphor"), parse_metaphor, "metaphor"),
            parse_enum(j.at("intensity"), parse_intensity, "intensity")};
}

json engine_json(const EngineConfig& e) {
    return {{"center_distance_cm", e.law.center_distance_cm},
            {"zone_fraction", e.law.zone_fraction},
            {"floor", e.law.floor},
            {"far_max", e.law.far_max},
            {"attain_radius_cm", e.attain_radius_cm},
            {"arm_radius_cm", e.arm_radius_cm},
            {"buzz_s", e.buzz_s},
            {"tick_s", e.tick_s},
            {"timeout_s", e.timeout_s}};
}

EngineConfig engine_from(const json& j) {
    EngineConfig e;
    e.law.center_distance_cm = j.at("center_distance_cm").get<double>();
    e.law.zone_fraction = j.at("zone_fraction").get<double>();
    e.law.floor = j.at("floor").get<double>();
    e.law.far_max = j.at("far_max").get<double>();
    e.attain_radius_cm = j.at("attain_radius_cm").get<double>();
    e.arm_radius_cm = j.at("arm_radius_cm").get<double>();
    e.buzz_s = j.at("buzz_s").get<double>();
    e.tick_s = j.at("tick_s").get<double>();
    e.timeout_s = j.at("timeout_s").get<double>();
    return e;
}

double parse_intensity_string(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad intensity " + s);
    return v;
}

}  // namespace

std::string format_intensity(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

void write_trial_log(std::ostream& out, const TrialRecord& rec) {
    json header = {
        {"record", "trial"},
        {"format", "hapnav-trial"},
        {"version", kTrialLogVersion},
        {"participant", rec.plan.participant},
        {"index", rec.plan.index},
        {"repetition", rec.plan.repetition},
        {"condition", condition_json(rec.plan.condition)},
        {"target",
         {{"nominal_deg", rec.plan.target.nominal_deg},
          {"corrected_deg", rec.plan.target.corrected_deg},
          {"position", point_json(rec.plan.target.position)},
          {"attain_radius_cm", rec.plan.target.attain_radius_cm}}},
        {"center", point_json(rec.center)},
        {"engine", engine_json(rec.engine)},
        {"outcome", to_string(rec.outcome)},
        {"completion_time", rec.completion_time ? json(*rec.completion_time) : json(nullptr)},
        {"counts",
         {{"samples", rec.samples.size()},
          {"frames", rec.frames.size()},
          {"events", rec.events.size()}}},
    };
    out << header.dump() << '\n';
    for (const PoseSample& s : rec.samples) {
        json line = {{"record", "sample"},
                     {"t", s.t},
                     {"hand", point_json(s.hand)},
                     {"wrist", point_json(s.wrist)},
                     {"valid", s.valid}};
        out << line.dump() << '\n';
    }
    for (const VibrationFrame& f : rec.frames) {
        json levels = json::array();
        for (double v : f.intensity) levels.push_back(format_intensity(v));
        out << json{{"record", "frame"}, {"t", f.t}, {"i", levels}}.dump() << '\n';
    }
    for (const SessionEvent& e : rec.events) {
        out << json{{"record", "event"}, {"kind", to_string(e.kind)}, {"t", e.t}}.dump() << '\n';
    }
}

std::string trial_log_string(const TrialRecord& record) {
    std::ostringstream os;
    write_trial_log(os, record);
    return os.str();
}

void save_trial_log(const TrialRecord& record, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    write_trial_log(out, record);
}

TrialRecord read_trial_log(std::istream& in, const std::string& source_name) {
    TrialRecord rec;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    std::size_t expected[3] = {0, 0, 0};
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = source_name + ":" + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, where + ": " + e.what());
        }
        try {
            const std::string kind = j.at("record").get<std::string>();
            if (!have_header) {
                if (kind != "trial" || j.at("version").get<int>() != kTrialLogVersion) {
                    throw Error(ErrorCode::SchemaMismatch, where + ": expected a v1 trial header");
                }
                have_header = true;
                rec.plan.participant = j.at("participant").get<int>();
                rec.plan.index = j.at("index").get<int>();
                rec.plan.repetition = j.at("repetition").get<int>();
                rec.plan.condition = condition_from(j.at("condition"));
                const json& tj = j.at("target");
                rec.plan.target.nominal_deg = tj.at("nominal_deg").get<double>();
                rec.plan.target.corrected_deg = tj.at("corrected_deg").get<double>();
                rec.plan.target.position = point_from(tj.at("position"));
                rec.plan.target.attain_radius_cm = tj.at("attain_radius_cm").get<double>();
                rec.center = point_from(j.at("center"));
                rec.engine = engine_from(j.at("engine"));
                rec.outcome = parse_enum(j.at("outcome"), parse_outcome, "outcome");
                if (!j.at("completion_time").is_null()) {
                    rec.completion_time = j.at("completion_time").get<double>();
                }
                const json& counts = j.at("counts");
                expected[0] = counts.at("samples").get<std::size_t>();
                expected[1] = counts.at("frames").get<std::size_t>();
                expected[2] = counts.at("events").get<std::size_t>();
            } else if (kind == "sample") {
                rec.samples.push_back({j.at("t").get<double>(), point_from(j.at("hand")),
                                       point_from(j.at("wrist")), j.at("valid").get<bool>()});
            } else if (kind == "frame") {
                VibrationFrame f;
                f.t = j.at("t").get<double>();
                const json& levels = j.at("i");
                if (!levels.is_array() || levels.size() != 4) {
                    throw Error(ErrorCode::SchemaMismatch, where + ": frame needs 4 intensities");
                }
                for (std::size_t m = 0; m < 4; ++m) {
                    f.intensity[m] = parse_intensity_string(levels.at(m).get<std::string>());
                }
                rec.frames.push_back(f);
            } else if (kind == "event") {
                rec.events.push_back(
                    {parse_enum(j.at("kind"), parse_event_kind, "event kind"), j.at("t").get<double>()});
            } else {
                throw Error(ErrorCode::SchemaMismatch, where + ": unknown record '" + kind + "'");
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorCode::SchemaMismatch, where + ": " + e.what());
        }
    }
    if (!have_header) throw Error(ErrorCode::EmptyFile, source_name + ": no trial header");
    if (rec.samples.size() != expected[0] || rec.frames.size() != expected[1] ||
        rec.events.size() != expected[2]) {
        throw Error(ErrorCode::SchemaMismatch, source_name + ": record counts do not match header");
    }
    rec.provenance = Provenance{source_name, 1, line_no};
    return rec;
}

TrialRecord load_trial_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read_trial_log(in, path.string());
}

std::vector<std::filesystem::path> list_trial_logs(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ReplayReport replay(const TrialRecord& record) {
    ReplayReport report;
    TrialSession session(record.plan, record.center, record.engine);
    std::vector<VibrationFrame> frames;
    std::vector<SessionEvent> events;
    for (const PoseSample& s : record.samples) {
        if (session.finished()) {
            report.detail = "samples continue after the trial ended";
            return report;
        }
        StepResult r = session.step(s);
        if (r.frame) frames.push_back(*r.frame);
        events.insert(events.end(), r.events.begin(), r.events.end());
    }
    if (!session.finished()) {
        // An aborted trial ends at its last logged event, which may follow the last sample.
        double t = record.samples.empty() ? 0.0 : record.samples.back().t;
        if (!record.events.empty()) t = std::max(t, record.events.back().t);
        const auto tail = session.abort(t);
        events.insert(events.end(), tail.begin(), tail.end());
    }
    if (frames.size() != record.frames.size()) {
        report.detail = "frame count " + std::to_string(frames.size()) + " vs logged " +
                        std::to_string(record.frames.size());
        return report;
    }
    for (std::size_t k = 0; k < frames.size(); ++k) {
        for (std::size_t m = 0; m < 4; ++m) {
            const std::string got = format_intensity(frames[k].intensity[m]);
            const std::string want = format_intensity(record.frames[k].intensity[m]);
            if (got != want) {
                report.detail = "frame " + std::to_string(k) + " motor " + std::to_string(m) + ": " +
                                got + " vs logged " + want;
                return report;
            }
        }
        ++report.frames_compared;
    }
    if (events.size() != record.events.size()) {
        report.detail = "event count " + std::to_string(events.size()) + " vs logged " +
                        std::to_string(record.events.size());
        return report;
    }
    for (std::size_t k = 0; k < events.size(); ++k) {
        if (events[k].kind != record.events[k].kind || events[k].t != record.events[k].t) {
            report.detail = "event " + std::to_string(k) + " differs";
            return report;
        }
    }
    const TrialRecord again = session.finalize();
    if (again.outcome != record.outcome || again.completion_time != record.completion_time) {
        report.detail = "outcome or completion time differs";
        return report;
    }
    report.match = true;
    return report;
}

}  // namespace hapnav
