#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hapnav/condition.hpp"
#include "hapnav/geometry.hpp"
#include "hapnav/session.hpp"

namespace hapnav {

/// Valid hand positions of one trial, in time order.
struct Trajectory {
    std::vector<double> t;
    std::vector<PlanePoint> points;
    PlanePoint origin{};
    PlanePoint target{};
    int excluded_samples = 0;  ///< invalid samples dropped before metrics
};

inline constexpr double kCriticalRadiusCm = 21.0;

/// Disk halfway between the board center and the target.
struct CriticalRegion {
    PlanePoint center{};
    double radius_cm = kCriticalRadiusCm;

    static CriticalRegion between(PlanePoint origin, PlanePoint target,
                                  double radius_cm = kCriticalRadiusCm);
};

/// Samples from trial start up to attainment (or the end of the record).
Trajectory trajectory_of(const TrialRecord& record);

/// Sum of segment lengths. Throws Error(TooFewSamples) below two points.
double path_length(std::span<const PlanePoint> points);

/// Length of segment [a, b] inside the closed disk, from the chord's quadratic roots.
double length_inside(PlanePoint a, PlanePoint b, const CriticalRegion& region);

/// Percentage of path length inside the region.
/// Throws Error(ZeroLengthPath) when the path has no length.
double pct_in_critical(std::span<const PlanePoint> points, const CriticalRegion& region);

struct TrialMetrics {
    Condition condition{};
    int participant = 0;
    int index = 0;
    Outcome outcome = Outcome::Aborted;
    std::optional<double> completion_time;
    std::optional<double> path_length_cm;
    std::optional<double> pct_critical;
    int excluded_samples = 0;
    std::string source;
};

TrialMetrics compute_metrics(const TrialRecord& record);

enum class Factor { Layout, Approach, Metaphor, Intensity };
enum class Metric { CompletionTime, PathLength, PctCritical };

std::string_view to_string(Factor f) noexcept;
std::string_view to_string(Metric m) noexcept;
std::optional<Factor> parse_factor(std::string_view s);
/// Comma-separated factor list, e.g. "approach,metaphor".
std::vector<Factor> parse_factors(std::string_view s);
std::string level_name(Factor f, const Condition& c);

struct Summary {
    int count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
};

struct GroupRow {
    std::map<Factor, std::string> key;
    int trials = 0;
    std::map<Metric, Summary> metrics;  ///< only metrics with at least one value
};

/// Difference of marginal means between the two levels of one factor.
struct LevelDifference {
    Factor factor{};
    Metric metric{};
    std::string level_a;
    std::string level_b;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double difference = 0.0;  ///< mean_a - mean_b
    double p_value = 1.0;     ///< permutation test, not a mixed-effects model
};

struct MetricsReport {
    std::vector<Factor> group_by;
    std::vector<TrialMetrics> trials;
    std::vector<GroupRow> groups;
    std::vector<LevelDifference> differences;
    std::vector<std::string> empty_groups;  ///< factor-level cells with no trials
    int excluded_samples = 0;
};

struct SummarizeOptions {
    int permutation_shuffles = 10000;
    std::uint64_t permutation_seed = 0;
};

MetricsReport summarize(std::span<const TrialRecord> records, const std::vector<Factor>& group_by,
                        const SummarizeOptions& options = {});
MetricsReport summarize_metrics(std::vector<TrialMetrics> trials,
                                const std::vector<Factor>& group_by,
                                const SummarizeOptions& options = {});

void write_trial_table(std::ostream& out, const MetricsReport& report);
void write_group_table(std::ostream& out, const MetricsReport& report);
void write_summary_json(std::ostream& out, const MetricsReport& report);
/// t,hand_x,hand_y for the trajectory used by the metrics.
void write_trajectory_csv(std::ostream& out, const TrialRecord& record);

/// Column mapping for externally recorded trajectory text files.
/// Column indices are zero-based; -1 disables a column.
struct DatasetSchema {
    char delimiter = ',';  ///< ' ' means any run of whitespace
    int header_lines = 1;
    int column_count = 3;
    int col_t = 0;
    int col_hand_x = 1;
    int col_hand_y = 2;
    int col_wrist_x = -1;
    int col_wrist_y = -1;
    int col_trial = -1;  ///< records split where this column changes
    int col_target_x = -1;
    int col_target_y = -1;
    int col_layout = -1;
    int col_approach = -1;
    int col_metaphor = -1;
    int col_intensity = -1;
    double time_scale = 1.0;      ///< multiplies t into seconds
    double position_scale = 1.0;  ///< multiplies coordinates into centimeters
    PlanePoint origin{};
    Condition condition{};  ///< used where no condition columns exist
    bool target_from_last_sample = true;  ///< when no target columns exist

    /// key = value lines; keys match the field names without the col_ prefix
    /// for columns (e.g. "hand_x = 1"), plus delimiter, header_lines, columns,
    /// time_scale, position_scale, origin = x y, layout/approach/metaphor/intensity = level.
    static DatasetSchema parse(const std::string& text);
    static DatasetSchema load(const std::filesystem::path& path);
};

struct ParseWarning {
    std::string file;
    int line = 0;
    std::string message;
};

struct IngestResult {
    std::vector<TrialRecord> records;
    std::vector<ParseWarning> warnings;
    int files = 0;
};

/// Reads one file or every *.txt / *.csv file in a directory.
/// Malformed values are skipped and reported; a wrong column count throws
/// Error(SchemaMismatch) naming the line, an empty file Error(EmptyFile).
IngestResult ingest_dataset(const std::filesystem::path& path, const DatasetSchema& schema);

/// Our own trial logs, from a single .jsonl file or a directory of them.
std::vector<TrialRecord> load_records(const std::filesystem::path& path);

}  // namespace hapnav
