#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace graphbench {

/// Size and diameter of the graph a run actually operated on (its largest
/// component, matching what the runner extracts).
struct InstanceAttributes {
    std::int64_t nodes = 0;
    std::int64_t edges = 0;
    std::int64_t diameter_lower = 0;
    std::int64_t diameter_upper = 0;
};

struct InstanceProfile {
    std::string instance_class;
    InstanceAttributes attributes;
};

struct RunRow {
    std::string configuration; ///< experiment label from the file name
    std::string algorithm;     ///< as recorded by the run itself
    std::string instance;
    std::string instance_class; ///< empty until joined
    std::int64_t repetition = 0;
    std::int64_t seed = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t iterations = 0;
    double run_time = 0.0;
    std::optional<double> wall_time;
    std::vector<std::int64_t> topk_nodes;
    std::vector<double> topk_scores;
    std::optional<InstanceAttributes> attributes;
};

/**
 * Successful runs plus an account of everything else found in the output
 * directory: rejected files carry a reason, failure markers are listed by
 * name. Every file ends up in exactly one of the three buckets.
 */
struct ResultFrame {
    std::vector<RunRow> rows;
    std::vector<std::pair<std::string, std::string>> rejected; ///< file, reason
    std::vector<std::string> failed_markers;
};

/// Parses every `<configuration>@<instance>@<repetition>.out` file under the
/// directory. Throws only when not a single run parsed successfully.
ResultFrame collect_successful(const std::string& output_dir);

struct ExpectedRun {
    std::string configuration;
    std::string instance;
    std::int64_t repetition = 0;
};

/// Expected runs without a matching collected row, in the order given.
std::vector<ExpectedRun> find_missing(const ResultFrame& frame,
                                      const std::vector<ExpectedRun>& expected);

/// Loads an edge list, keeps the largest component, and measures it.
InstanceAttributes compute_instance_attributes(const std::string& path, bool directed = false,
                                               std::uint64_t seed = 0);

void join_instance_attributes(ResultFrame& frame,
                              const std::map<std::string, InstanceProfile>& profiles);

/// Log-space product mean. All inputs must be positive.
double geometric_mean(std::span<const double> values);

struct SpeedupRow {
    std::string instance;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double ratio = 0.0; ///< mean_b / mean_a, the speedup of a over b
    std::size_t runs_a = 0;
    std::size_t runs_b = 0;
};

struct SpeedupTable {
    std::vector<SpeedupRow> rows;
    double geometric_mean_ratio = 1.0;
    std::vector<std::string> missing_a; ///< instances where only b finished
    std::vector<std::string> missing_b;
    std::vector<std::string> skew_warnings; ///< "configuration@instance" entries
};

/**
 * Per-instance arithmetic means, cross-instance geometric mean. Instances
 * with runs on only one side are reported, never imputed. A warning is
 * recorded when a per-instance sample has skewness above 2, where the
 * arithmetic mean is a poor location measure.
 */
SpeedupTable speedup_table(const ResultFrame& frame, const std::string& configuration_a,
                           const std::string& configuration_b);

/// s / sqrt(k) with the sample standard deviation s.
double standard_error(std::span<const double> values);

/// Smallest k with sqrt(variance/k) <= target_se.
std::int64_t required_repetitions(double variance_estimate, double target_se);

struct InstanceLabel {
    std::string name;
    std::string instance_class;
};

struct SplitPlan {
    std::vector<std::string> tuning;
    std::vector<std::string> evaluation;
};

/// Uniformly samples per_class instances from each class into the tuning
/// set; the rest form the evaluation set. Deterministic per seed.
SplitPlan stratified_split(const std::vector<InstanceLabel>& instances, std::size_t per_class,
                           std::uint64_t seed);

struct TuningCandidate {
    double value = 0.0;
    std::string configuration;
};

struct TuningResult {
    double best_value = 0.0;
    std::string best_configuration;
    std::vector<std::pair<double, double>> mean_times; ///< (candidate value, mean run_time)
};

/**
 * Picks the candidate with the lowest mean run_time over the tuning frame.
 * Every candidate needs at least one run on every instance in the frame;
 * ties go to the smaller parameter value.
 */
TuningResult tune_parameter(const std::vector<TuningCandidate>& candidates,
                            const ResultFrame& tuning_frame);

std::string write_runs_csv(const ResultFrame& frame);
std::string write_aggregate_csv(const ResultFrame& frame);

} // namespace graphbench
