#include "hapnav/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hapnav/errors.hpp"
#include "hapnav/rng.hpp"
#include "hapnav/stats.hpp"
#include "hapnav/trial_log.hpp"

namespace hapnav {

namespace {

constexpr Metric kMetrics[] = {Metric::CompletionTime, Metric::PathLength, Metric::PctCritical};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<double> metric_value(const TrialMetrics& m, Metric metric) {
    switch (metric) {
        case Metric::CompletionTime: return m.completion_time;
        case Metric::PathLength: return m.path_length_cm;
        case Metric::PctCritical: return m.pct_critical;
    }
    return std::nullopt;
}

std::vector<std::string> levels_of(Factor f) {
    switch (f) {
        case Factor::Layout: return {"horizontal", "vertical"};
        case Factor::Approach: return {"two_tactor", "worst_axis"};
        case Factor::Metaphor: return {"push", "pull"};
        case Factor::Intensity: return {"linear", "zone"};
    }
    return {};
}

Summary summarize_values(const std::vector<double>& values) {
    Summary s;
    s.count = static_cast<int>(values.size());
    s.mean = stats::mean(values);
    s.sd = stats::stddev(values);
    s.median = stats::median(values);
    return s;
}

std::string key_string(const std::map<Factor, std::string>& key) {
    std::string out;
    for (const auto& [factor, level] : key) {
        if (!out.empty()) out += ",";
        out.append(to_string(factor)).append("=").append(level);
    }
    return out.empty() ? "all" : out;
}

std::string fmt(std::optional<double> v) {
    if (!v) return "";
    std::ostringstream os;
    os << std::setprecision(10) << *v;
    return os.str();
}

std::vector<std::string> split_columns(const std::string& line, char delimiter) {
    std::vector<std::string> cols;
    if (delimiter == ' ') {
        std::istringstream in(line);
        std::string cell;
        while (in >> cell) cols.push_back(cell);
        return cols;
    }
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, delimiter)) cols.push_back(trim(cell));
    if (!line.empty() && line.back() == delimiter) cols.emplace_back();
    return cols;
}

std::optional<double> to_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

CriticalRegion CriticalRegion::between(PlanePoint origin, PlanePoint target, double radius_cm) {
    if (!(radius_cm > 0.0)) throw Error(ErrorCode::InvalidArgument, "critical radius must be > 0");
    return {(origin + target) * 0.5, radius_cm};
}

Trajectory trajectory_of(const TrialRecord& record) {
    Trajectory traj;
    traj.origin = record.center;
    traj.target = record.plan.target.position;
    const double start = record.event_time(EventKind::TrialStart).value_or(-std::numeric_limits<double>::infinity());
    const double end = record.event_time(EventKind::TargetReached).value_or(std::numeric_limits<double>::infinity());
    for (const PoseSample& s : record.samples) {
        if (s.t < start || s.t > end) continue;
        if (!s.valid || !is_valid(s.hand)) {
            ++traj.excluded_samples;
            continue;
        }
        traj.t.push_back(s.t);
        traj.points.push_back(s.hand);
    }
    return traj;
}

double path_length(std::span<const PlanePoint> points) {
    if (points.size() < 2) throw Error(ErrorCode::TooFewSamples, "path length needs two samples");
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
    return total;
}

double length_inside(PlanePoint a, PlanePoint b, const CriticalRegion& region) {
    const PlanePoint d = b - a;
    const double len = norm(d);
    if (len == 0.0) return 0.0;
    const PlanePoint f = a - region.center;
    // |f + s d|^2 = r^2, with s in [0, 1] along the segment.
    const double qa = dot(d, d);
    const double qb = 2.0 * dot(f, d);
    const double qc = dot(f, f) - region.radius_cm * region.radius_cm;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return 0.0;
    const double root = std::sqrt(disc);
    const double lo = std::max(0.0, (-qb - root) / (2.0 * qa));
    const double hi = std::min(1.0, (-qb + root) / (2.0 * qa));
    if (hi <= lo) return 0.0;
    if (lo == 0.0 && hi == 1.0) return len;
    return (hi - lo) * len;
}

double pct_in_critical(std::span<const PlanePoint> points, const CriticalRegion& region) {
    double total = 0.0;
    double inside = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        total += distance(points[i - 1], points[i]);
        inside += length_inside(points[i - 1], points[i], region);
    }
    if (!(total > 0.0)) throw Error(ErrorCode::ZeroLengthPath, "trajectory has zero length");
    return std::clamp(100.0 * inside / total, 0.0, 100.0);
}

TrialMetrics compute_metrics(const TrialRecord& record) {
    TrialMetrics m;
    m.condition = record.plan.condition;
    m.participant = record.plan.participant;
    m.index = record.plan.index;
    m.outcome = record.outcome;
    if (record.outcome == Outcome::Reached) m.completion_time = record.completion_time;
    if (record.provenance) m.source = record.provenance->file;

    const Trajectory traj = trajectory_of(record);
    m.excluded_samples = traj.excluded_samples;
    if (traj.points.size() >= 2) {
        m.path_length_cm = path_length(traj.points);
        if (*m.path_length_cm > 0.0) {
            m.pct_critical =
                pct_in_critical(traj.points, CriticalRegion::between(traj.origin, traj.target));
        }
    }
    return m;
}

std::string_view to_string(Factor f) noexcept {
    switch (f) {
        case Factor::Layout: return "layout";
        case Factor::Approach: return "approach";
        case Factor::Metaphor: return "metaphor";
        case Factor::Intensity: return "intensity";
    }
    return "?";
}

std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::CompletionTime: return "completion_time_s";
        case Metric::PathLength: return "path_length_cm";
        case Metric::PctCritical: return "pct_in_critical";
    }
    return "?";
}

std::optional<Factor> parse_factor(std::string_view s) {
    for (Factor f : {Factor::Layout, Factor::Approach, Factor::Metaphor, Factor::Intensity}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

std::vector<Factor> parse_factors(std::string_view s) {
    std::vector<Factor> out;
    for (const std::string& item : split_columns(std::string(s), ',')) {
        if (item.empty()) continue;
        const auto f = parse_factor(item);
        if (!f) throw Error(ErrorCode::InvalidArgument, "unknown grouping factor '" + item + "'");
        if (std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
    }
    return out;
}

std::string level_name(Factor f, const Condition& c) {
    switch (f) {
        case Factor::Layout: return std::string(to_string(c.layout));
        case Factor::Approach: return std::string(to_string(c.approach));
        case Factor::Metaphor: return std::string(to_string(c.metaphor));
        case Factor::Intensity: return std::string(to_string(c.intensity));
    }
    return {};
}

MetricsReport summarize(std::span<const TrialRecord> records, const std::vector<Factor>& group_by,
                        const SummarizeOptions& options) {
    std::vector<TrialMetrics> trials;
    trials.reserve(records.size());
    for (const TrialRecord& r : records) trials.push_back(compute_metrics(r));
    return summarize_metrics(std::move(trials), group_by, options);
}

MetricsReport summarize_metrics(std::vector<TrialMetrics> trials,
                                const std::vector<Factor>& group_by,
                                const SummarizeOptions& options) {
    if (trials.empty()) throw Error(ErrorCode::EmptyGroup, "no trials to summarize");
    MetricsReport report;
    report.group_by = group_by;
    report.trials = std::move(trials);

    std::map<std::map<Factor, std::string>, std::vector<const TrialMetrics*>> cells;
    for (const TrialMetrics& m : report.trials) {
        report.excluded_samples += m.excluded_samples;
        std::map<Factor, std::string> key;
        for (Factor f : group_by) key[f] = level_name(f, m.condition);
        cells[key].push_back(&m);
    }

    // Every factor-level combination, so empty cells can be named.
    std::vector<std::map<Factor, std::string>> all_keys{{}};
    for (Factor f : group_by) {
        std::vector<std::map<Factor, std::string>> next;
        for (const auto& partial : all_keys) {
            for (const std::string& level : levels_of(f)) {
                auto k = partial;
                k[f] = level;
                next.push_back(std::move(k));
            }
        }
        all_keys = std::move(next);
    }
    for (const auto& key : all_keys) {
        const auto it = cells.find(key);
        if (it == cells.end()) {
            report.empty_groups.push_back(key_string(key));
            continue;
        }
        GroupRow row;
        row.key = key;
        row.trials = static_cast<int>(it->second.size());
        for (Metric metric : kMetrics) {
            std::vector<double> values;
            for (const TrialMetrics* m : it->second) {
                if (auto v = metric_value(*m, metric)) values.push_back(*v);
            }
            if (!values.empty()) row.metrics[metric] = summarize_values(values);
        }
        report.groups.push_back(std::move(row));
    }

    std::uint64_t test_index = 0;
    for (Factor f : group_by) {
        const auto levels = levels_of(f);
        for (Metric metric : kMetrics) {
            ++test_index;
            std::vector<double> a;
            std::vector<double> b;
            for (const TrialMetrics& m : report.trials) {
                const auto v = metric_value(m, metric);
                if (!v) continue;
                (level_name(f, m.condition) == levels[0] ? a : b).push_back(*v);
            }
            if (a.empty() || b.empty()) continue;
            LevelDifference diff;
            diff.factor = f;
            diff.metric = metric;
            diff.level_a = levels[0];
            diff.level_b = levels[1];
            diff.mean_a = stats::mean(a);
            diff.mean_b = stats::mean(b);
            diff.difference = diff.mean_a - diff.mean_b;
            diff.p_value = stats::permutation_p_value(
                a, b, options.permutation_shuffles, mix_seed(options.permutation_seed, test_index));
            report.differences.push_back(diff);
        }
    }
    return report;
}

void write_trial_table(std::ostream& out, const MetricsReport& report) {
    out << "participant,index,layout,approach,metaphor,intensity,outcome,"
           "completion_time_s,path_length_cm,pct_in_critical,excluded_samples,source\n";
    for (const TrialMetrics& m : report.trials) {
        out << m.participant << ',' << m.index << ',' << to_string(m.condition.layout) << ','
            << to_string(m.condition.approach) << ',' << to_string(m.condition.metaphor) << ','
            << to_string(m.condition.intensity) << ',' << to_string(m.outcome) << ','
            << fmt(m.completion_time) << ',' << fmt(m.path_length_cm) << ','
            << fmt(m.pct_critical) << ',' << m.excluded_samples << ',' << m.source << '\n';
    }
}

void write_group_table(std::ostream& out, const MetricsReport& report) {
    for (Factor f : report.group_by) out << to_string(f) << ',';
    out << "trials,metric,count,mean,sd,median\n";
    for (const GroupRow& row : report.groups) {
        for (const auto& [metric, s] : row.metrics) {
            for (const auto& [factor, level] : row.key) out << level << ',';
            out << row.trials << ',' << to_string(metric) << ',' << s.count << ',' << fmt(s.mean)
                << ',' << fmt(s.sd) << ',' << fmt(s.median) << '\n';
        }
    }
    if (!report.differences.empty()) {
        out << "\nfactor,metric,level_a,level_b,mean_a,mean_b,difference,permutation_p\n";
        for (const LevelDifference& d : report.differences) {
            out << to_string(d.factor) << ',' << to_string(d.metric) << ',' << d.level_a << ','
                << d.level_b << ',' << fmt(d.mean_a) << ',' << fmt(d.mean_b) << ','
                << fmt(d.difference) << ',' << fmt(d.p_value) << '\n';
        }
    }
}

void write_summary_json(std::ostream& out, const MetricsReport& report) {
    using nlohmann::json;
    json j;
    j["trials"] = report.trials.size();
    j["excluded_samples"] = report.excluded_samples;
    // Timed-out and aborted trials carry no completion time; the counts show how many.
    j["outcomes"] = {{"reached", 0}, {"timeout", 0}, {"aborted", 0}};
    for (const TrialMetrics& m : report.trials) {
        auto& n = j["outcomes"][std::string(to_string(m.outcome))];
        n = n.get<int>() + 1;
    }
    j["group_by"] = json::array();
    for (Factor f : report.group_by) j["group_by"].push_back(to_string(f));
    j["groups"] = json::array();
    for (const GroupRow& row : report.groups) {
        json g;
        for (const auto& [factor, level] : row.key) g["key"][std::string(to_string(factor))] = level;
        g["trials"] = row.trials;
        for (const auto& [metric, s] : row.metrics) {
            g["metrics"][std::string(to_string(metric))] = {
                {"count", s.count}, {"mean", s.mean}, {"sd", s.sd}, {"median", s.median}};
        }
        j["groups"].push_back(g);
    }
    j["differences"] = json::array();
    for (const LevelDifference& d : report.differences) {
        j["differences"].push_back({{"factor", to_string(d.factor)},
                                    {"metric", to_string(d.metric)},
                                    {"level_a", d.level_a},
                                    {"level_b", d.level_b},
                                    {"mean_a", d.mean_a},
                                    {"mean_b", d.mean_b},
                                    {"difference", d.difference},
                                    {"permutation_p", d.p_value}});
    }
    j["empty_groups"] = report.empty_groups;
    j["note"] = "p-values are two-sided permutation tests on group means, not mixed-effects models";
    out << j.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& out, const TrialRecord& record) {
    const Trajectory traj = trajectory_of(record);
    out << "t,hand_x,hand_y\n" << std::setprecision(10);
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        out << traj.t[i] << ',' << traj.points[i].x << ',' << traj.points[i].y << '\n';
    }
}

DatasetSchema DatasetSchema::parse(const std::string& text) {
    DatasetSchema s;
    std::istringstream in(text);
    std::string line;
    auto as_int = [](const std::string& key, const std::string& v) {
        const auto n = to_number(v);
        if (!n || *n != std::floor(*n)) throw Error(ErrorCode::ParseError, "schema: bad integer for " + key);
        return static_cast<int>(*n);
    };
    auto as_double = [](const std::string& key, const std::string& v) {
        const auto n = to_number(v);
        if (!n) throw Error(ErrorCode::ParseError, "schema: bad number for " + key);
        return *n;
    };
    const std::map<std::string, int DatasetSchema::*> columns = {
        {"t", &DatasetSchema::col_t},
        {"hand_x", &DatasetSchema::col_hand_x},
        {"hand_y", &DatasetSchema::col_hand_y},
        {"wrist_x", &DatasetSchema::col_wrist_x},
        {"wrist_y", &DatasetSchema::col_wrist_y},
        {"trial", &DatasetSchema::col_trial},
        {"target_x", &DatasetSchema::col_target_x},
        {"target_y", &DatasetSchema::col_target_y},
        {"layout_column", &DatasetSchema::col_layout},
        {"approach_column", &DatasetSchema::col_approach},
        {"metaphor_column", &DatasetSchema::col_metaphor},
        {"intensity_column", &DatasetSchema::col_intensity},
    };
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "schema line without '=': " + t);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (const auto it = columns.find(key); it != columns.end()) {
            s.*(it->second) = as_int(key, value);
        } else if (key == "delimiter") {
            if (value == "whitespace" || value == "space") s.delimiter = ' ';
            else if (value == "tab") s.delimiter = '\t';
            else if (value.size() == 1) s.delimiter = value[0];
            else throw Error(ErrorCode::ParseError, "schema: bad delimiter " + value);
        } else if (key == "header_lines") {
            s.header_lines = as_int(key, value);
        } else if (key == "columns") {
            s.column_count = as_int(key, value);
        } else if (key == "time_scale") {
            s.time_scale = as_double(key, value);
        } else if (key == "position_scale") {
            s.position_scale = as_double(key, value);
        } else if (key == "origin") {
            std::istringstream xy(value);
            std::string x;
            std::string y;
            xy >> x >> y;
            s.origin = {as_double(key, x), as_double(key, y)};
        } else if (key == "layout") {
            const auto v = parse_layout(value);
            if (!v) throw Error(ErrorCode::ParseError, "schema: bad layout " + value);
            s.condition.layout = *v;
        } else if (key == "approach") {
            const auto v = parse_approach(value);
            if (!v) throw Error(ErrorCode::ParseError, "schema: bad approach " + value);
            s.condition.approach = *v;
        } else if (key == "metaphor") {
            const auto v = parse_metaphor(value);
            if (!v) throw Error(ErrorCode::ParseError, "schema: bad metaphor " + value);
            s.condition.metaphor = *v;
        } else if (key == "intensity") {
            const auto v = parse_intensity(value);
            if (!v) throw Error(ErrorCode::ParseError, "schema: bad intensity " + value);
            s.condition.intensity = *v;
        } else if (key == "target_from_last_sample") {
            s.target_from_last_sample = value == "true" || value == "1";
        } else {
            throw Error(ErrorCode::ParseError, "schema: unknown key " + key);
        }
    }
    const int max_col = std::max({s.col_t, s.col_hand_x, s.col_hand_y, s.col_wrist_x, s.col_wrist_y,
                                  s.col_trial, s.col_target_x, s.col_target_y, s.col_layout,
                                  s.col_approach, s.col_metaphor, s.col_intensity});
    if (s.col_t < 0 || s.col_hand_x < 0 || s.col_hand_y < 0 || max_col >= s.column_count) {
        throw Error(ErrorCode::ParseError, "schema: column indices inconsistent with column count");
    }
    return s;
}

DatasetSchema DatasetSchema::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open schema " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {

struct PendingTrial {
    std::string trial_key;
    TrialRecord record;
    std::optional<PlanePoint> target;
};

void close_trial(PendingTrial& pending, const DatasetSchema& schema, IngestResult& result) {
    TrialRecord& rec = pending.record;
    if (rec.samples.empty()) return;
    rec.center = schema.origin;
    const PlanePoint target =
        pending.target ? *pending.target : rec.samples.back().hand;
    rec.plan.target.position = target;
    rec.plan.target.nominal_deg = std::atan2(target.x - schema.origin.x, target.y - schema.origin.y) *
                                  180.0 / 3.14159265358979323846;
    rec.plan.target.corrected_deg = rec.plan.target.nominal_deg;
    const bool reached = (pending.target || schema.target_from_last_sample) &&
                         distance(rec.samples.back().hand, target) <= rec.engine.attain_radius_cm;
    rec.outcome = reached ? Outcome::Reached : Outcome::Timeout;
    if (reached) rec.completion_time = rec.samples.back().t - rec.samples.front().t;
    rec.plan.index = static_cast<int>(result.records.size()) + 1;
    result.records.push_back(std::move(rec));
}

}  // namespace

IngestResult ingest_dataset(const std::filesystem::path& path, const DatasetSchema& schema) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            const auto ext = entry.path().extension();
            if (entry.is_regular_file() && (ext == ".txt" || ext == ".csv")) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    } else if (std::filesystem::is_regular_file(path)) {
        files.push_back(path);
    } else {
        throw Error(ErrorCode::IoError, "no such dataset path " + path.string());
    }

    IngestResult result;
    int participant = 0;
    for (const auto& file : files) {
        ++participant;
        ++result.files;
        std::ifstream in(file);
        if (!in) throw Error(ErrorCode::IoError, "cannot open " + file.string());
        const std::string name = file.string();

        PendingTrial pending;
        std::string line;
        int line_no = 0;
        int data_lines = 0;
        auto start_trial = [&](const std::string& key, int first_line) {
            close_trial(pending, schema, result);
            pending = PendingTrial{};
            pending.trial_key = key;
            pending.record.plan.participant = participant;
            pending.record.plan.condition = schema.condition;
            pending.record.provenance = Provenance{name, first_line, first_line};
        };
        bool started = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no <= schema.header_lines) continue;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            ++data_lines;
            const auto cols = split_columns(line, schema.delimiter);
            if (static_cast<int>(cols.size()) != schema.column_count) {
                throw Error(ErrorCode::SchemaMismatch,
                            name + ":" + std::to_string(line_no) + ": expected " +
                                std::to_string(schema.column_count) + " columns, found " +
                                std::to_string(cols.size()));
            }
            auto warn = [&](const std::string& msg) {
                result.warnings.push_back({name, line_no, msg});
            };
            const auto t = to_number(cols[schema.col_t]);
            const auto hx = to_number(cols[schema.col_hand_x]);
            const auto hy = to_number(cols[schema.col_hand_y]);
            if (!t || !hx || !hy) {
                warn("unparsable time or hand position");
                continue;
            }
            const std::string key = schema.col_trial >= 0 ? cols[schema.col_trial] : std::string();
            if (!started || key != pending.trial_key) {
                start_trial(key, line_no);
                started = true;
                Condition& c = pending.record.plan.condition;
                auto level = [&](int col, auto parser, auto& field) {
                    if (col < 0) return;
                    if (const auto v = parser(cols[col])) field = *v;
                    else warn("unknown condition level '" + cols[col] + "'");
                };
                level(schema.col_layout, parse_layout, c.layout);
                level(schema.col_approach, parse_approach, c.approach);
                level(schema.col_metaphor, parse_metaphor, c.metaphor);
                level(schema.col_intensity, parse_intensity, c.intensity);
                if (schema.col_target_x >= 0 && schema.col_target_y >= 0) {
                    const auto tx = to_number(cols[schema.col_target_x]);
                    const auto ty = to_number(cols[schema.col_target_y]);
                    if (tx && ty) {
                        pending.target = PlanePoint{*tx, *ty} * schema.position_scale;
                    } else {
                        warn("unparsable target position");
                    }
                }
            }
            PoseSample s;
            s.t = *t * schema.time_scale;
            s.hand = PlanePoint{*hx, *hy} * schema.position_scale;
            s.wrist = s.hand + PlanePoint{0.0, -10.0};
            if (schema.col_wrist_x >= 0 && schema.col_wrist_y >= 0) {
                const auto wx = to_number(cols[schema.col_wrist_x]);
                const auto wy = to_number(cols[schema.col_wrist_y]);
                if (wx && wy) s.wrist = PlanePoint{*wx, *wy} * schema.position_scale;
            }
            auto& samples = pending.record.samples;
            if (!samples.empty() && s.t < samples.back().t) {
                warn("timestamp goes backwards");
                continue;
            }
            samples.push_back(s);
            pending.record.provenance->last_line = line_no;
        }
        if (data_lines == 0) throw Error(ErrorCode::EmptyFile, name + ": no data lines");
        close_trial(pending, schema, result);
    }
    return result;
}

std::vector<TrialRecord> load_records(const std::filesystem::path& path) {
    std::vector<TrialRecord> out;
    if (std::filesystem::is_directory(path)) {
        for (const auto& file : list_trial_logs(path)) out.push_back(load_trial_log(file));
    } else {
        out.push_back(load_trial_log(path));
    }
    return out;
}

}  // namespace hapnav
