#include "graphbench/collect.hpp"

#include "graphbench/graph.hpp"
#include "graphbench/random.hpp"
#include "graphbench/runfile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace graphbench {

namespace {

// file stem -> (configuration, instance, repetition); empty configuration
// signals a mismatch
std::optional<ExpectedRun> parse_run_name(const std::string& stem) {
    const auto first = stem.find('@');
    const auto last = stem.rfind('@');
    if (first == std::string::npos || first == last) return std::nullopt;
    ExpectedRun id;
    id.configuration = stem.substr(0, first);
    id.instance = stem.substr(first + 1, last - first - 1);
    const std::string rep = stem.substr(last + 1);
    if (id.configuration.empty() || id.instance.empty() || rep.empty()) return std::nullopt;
    const auto [ptr, ec] = std::from_chars(rep.data(), rep.data() + rep.size(), id.repetition);
    if (ec != std::errc() || ptr != rep.data() + rep.size() || id.repetition < 0)
        return std::nullopt;
    return id;
}

double param_as_double(const ParamValue& v) {
    return std::holds_alternative<double>(v) ? std::get<double>(v)
                                             : double(std::get<std::int64_t>(v));
}

double mean_of(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / double(v.size());
}

double sample_skewness(std::span<const double> v) {
    const double n = double(v.size());
    const double mean = mean_of(v);
    double m2 = 0.0, m3 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0) return 0.0;
    return m3 / std::pow(m2, 1.5);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

ResultFrame collect_successful(const std::string& output_dir) {
    if (!fs::is_directory(output_dir))
        throw std::invalid_argument("not a directory: " + output_dir);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(output_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    ResultFrame frame;
    for (const auto& path : files) {
        const std::string name = path.filename().string();
        if (path.extension() == ".failed") {
            frame.failed_markers.push_back(name);
            continue;
        }
        if (path.extension() != ".out") {
            frame.rejected.emplace_back(name, "not a run output or failure marker");
            continue;
        }
        const auto id = parse_run_name(path.stem().string());
        if (!id) {
            frame.rejected.emplace_back(name,
                                        "file name is not configuration@instance@repetition");
            continue;
        }
        std::ifstream in(path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        const auto parsed = parse_run_output(buffer.str());
        if (!parsed.ok()) {
            frame.rejected.emplace_back(name, parsed.error);
            continue;
        }
        const RunOutput& record = *parsed.record;
        RunRow row;
        row.configuration = id->configuration;
        row.instance = id->instance;
        row.repetition = id->repetition;
        row.algorithm = record.algorithm;
        row.seed = std::llround(param_as_double(record.parameters.at("seed")));
        row.epsilon = param_as_double(record.parameters.at("epsilon"));
        row.delta = param_as_double(record.parameters.at("delta"));
        row.iterations = record.iterations;
        row.run_time = record.run_time;
        row.wall_time = record.wall_time;
        row.topk_nodes = record.topk_nodes;
        row.topk_scores = record.topk_scores;
        frame.rows.push_back(std::move(row));
    }
    if (frame.rows.empty())
        throw std::runtime_error("no successful runs under " + output_dir);
    return frame;
}

std::vector<ExpectedRun> find_missing(const ResultFrame& frame,
                                      const std::vector<ExpectedRun>& expected) {
    std::set<std::tuple<std::string, std::string, std::int64_t>> seen;
    for (const auto& row : frame.rows)
        seen.insert({row.configuration, row.instance, row.repetition});
    std::vector<ExpectedRun> missing;
    for (const auto& e : expected)
        if (!seen.count({e.configuration, e.instance, e.repetition})) missing.push_back(e);
    return missing;
}

InstanceAttributes compute_instance_attributes(const std::string& path, bool directed,
                                               std::uint64_t seed) {
    const Graph loaded = load_edge_list_file(path, directed);
    const auto extraction = largest_component(loaded);
    const Graph& g = extraction.graph;
    const auto diameter = estimate_diameter(g, seed);
    InstanceAttributes attributes;
    attributes.nodes = std::int64_t(g.node_count());
    attributes.edges = std::int64_t(g.edge_count());
    attributes.diameter_lower = diameter.lower;
    attributes.diameter_upper = diameter.upper;
    return attributes;
}

void join_instance_attributes(ResultFrame& frame,
                              const std::map<std::string, InstanceProfile>& profiles) {
    for (auto& row : frame.rows) {
        const auto hit = profiles.find(row.instance);
        if (hit == profiles.end()) continue;
        row.instance_class = hit->second.instance_class;
        row.attributes = hit->second.attributes;
    }
}

double geometric_mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("geometric mean of nothing");
    double log_sum = 0.0;
    for (double v : values) {
        if (!(v > 0.0)) throw std::invalid_argument("geometric mean needs positive values");
        log_sum += std::log(v);
    }
    return std::exp(log_sum / double(values.size()));
}

SpeedupTable speedup_table(const ResultFrame& frame, const std::string& configuration_a,
                           const std::string& configuration_b) {
    std::map<std::string, std::vector<double>> times_a, times_b;
    for (const auto& row : frame.rows) {
        if (row.configuration == configuration_a) times_a[row.instance].push_back(row.run_time);
        if (row.configuration == configuration_b) times_b[row.instance].push_back(row.run_time);
    }

    SpeedupTable table;
    std::vector<double> ratios;
    for (const auto& [instance, a] : times_a) {
        const auto b = times_b.find(instance);
        if (b == times_b.end()) {
            table.missing_b.push_back(instance);
            continue;
        }
        SpeedupRow row;
        row.instance = instance;
        row.mean_a = mean_of(a);
        row.mean_b = mean_of(b->second);
        row.ratio = row.mean_b / row.mean_a;
        row.runs_a = a.size();
        row.runs_b = b->second.size();
        ratios.push_back(row.ratio);
        table.rows.push_back(std::move(row));
        if (a.size() >= 3 && sample_skewness(a) > 2.0)
            table.skew_warnings.push_back(configuration_a + "@" + instance);
        if (b->second.size() >= 3 && sample_skewness(b->second) > 2.0)
            table.skew_warnings.push_back(configuration_b + "@" + instance);
    }
    for (const auto& [instance, b] : times_b)
        if (!times_a.count(instance)) table.missing_a.push_back(instance);
    if (table.rows.empty())
        throw std::runtime_error("no instance has runs for both " + configuration_a + " and " +
                                 configuration_b);
    table.geometric_mean_ratio = geometric_mean(ratios);
    return table;
}

double standard_error(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("standard error needs >= 2 values");
    const double k = double(values.size());
    const double mean = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
}

std::int64_t required_repetitions(double variance_estimate, double target_se) {
    if (!(variance_estimate > 0.0) || !(target_se > 0.0))
        throw std::invalid_argument("variance and target must be positive");
    auto k = std::int64_t(std::ceil(variance_estimate / (target_se * target_se)));
    if (k < 1) k = 1;
    while (std::sqrt(variance_estimate / double(k)) > target_se) ++k;
    while (k > 1 && std::sqrt(variance_estimate / double(k - 1)) <= target_se) --k;
    return k;
}

SplitPlan stratified_split(const std::vector<InstanceLabel>& instances, std::size_t per_class,
                           std::uint64_t seed) {
    if (instances.empty()) throw std::invalid_argument("nothing to split");
    if (per_class < 1) throw std::invalid_argument("per_class must be at least 1");

    std::map<std::string, std::vector<std::string>> classes;
    for (const auto& label : instances) classes[label.instance_class].push_back(label.name);

    SplitPlan plan;
    Rng rng(seed);
    for (auto& [cls, names] : classes) {
        std::sort(names.begin(), names.end());
        for (std::size_t i = names.size(); i > 1; --i)
            std::swap(names[i - 1], names[rng.bounded(i)]);
        const std::size_t take = std::min(per_class, names.size());
        plan.tuning.insert(plan.tuning.end(), names.begin(), names.begin() + take);
        plan.evaluation.insert(plan.evaluation.end(), names.begin() + take, names.end());
    }
    std::sort(plan.tuning.begin(), plan.tuning.end());
    std::sort(plan.evaluation.begin(), plan.evaluation.end());
    return plan;
}

TuningResult tune_parameter(const std::vector<TuningCandidate>& candidates,
                            const ResultFrame& tuning_frame) {
    if (candidates.empty()) throw std::invalid_argument("no tuning candidates");

    std::set<std::string> instances;
    for (const auto& row : tuning_frame.rows) instances.insert(row.instance);

    TuningResult result;
    bool have_best = false;
    double best_mean = 0.0;
    for (const auto& candidate : candidates) {
        std::set<std::string> covered;
        std::vector<double> times;
        for (const auto& row : tuning_frame.rows) {
            if (row.configuration != candidate.configuration) continue;
            covered.insert(row.instance);
            times.push_back(row.run_time);
        }
        for (const auto& instance : instances)
            if (!covered.count(instance))
                throw std::runtime_error("candidate " + candidate.configuration +
                                         " has no runs on instance " + instance);
        if (times.empty())
            throw std::runtime_error("candidate " + candidate.configuration +
                                     " has no runs in the tuning frame");
        const double mean = mean_of(times);
        result.mean_times.emplace_back(candidate.value, mean);
        if (!have_best || mean < best_mean ||
            (mean == best_mean && candidate.value < result.best_value)) {
            result.best_value = candidate.value;
            result.best_configuration = candidate.configuration;
            best_mean = mean;
            have_best = true;
        }
    }
    return result;
}

std::string write_runs_csv(const ResultFrame& frame) {
    std::string out = "configuration,algorithm,instance,class,repetition,seed,epsilon,delta,"
                      "iterations,run_time,nodes,edges,diameter_lower,diameter_upper\n";
    for (const auto& row : frame.rows) {
        out += csv_escape(row.configuration) + ',' + csv_escape(row.algorithm) + ',' +
               csv_escape(row.instance) + ',' + csv_escape(row.instance_class) + ',' +
               std::to_string(row.repetition) + ',' + std::to_string(row.seed) + ',' +
               format_double(row.epsilon) + ',' + format_double(row.delta) + ',' +
               std::to_string(row.iterations) + ',' + format_double(row.run_time) + ',';
        if (row.attributes) {
            const auto& a = *row.attributes;
            out += std::to_string(a.nodes) + ',' + std::to_string(a.edges) + ',' +
                   std::to_string(a.diameter_lower) + ',' + std::to_string(a.diameter_upper);
        } else {
            out += ",,,";
        }
        out += '\n';
    }
    return out;
}

std::string write_aggregate_csv(const ResultFrame& frame) {
    std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
    for (const auto& row : frame.rows)
        groups[{row.configuration, row.instance}].push_back(row.run_time);

    std::string out = "configuration,instance,runs,mean_run_time,standard_error\n";
    for (const auto& [key, times] : groups) {
        out += csv_escape(key.first) + ',' + csv_escape(key.second) + ',' +
               std::to_string(times.size()) + ',' + format_double(mean_of(times)) + ',';
        if (times.size() >= 2) out += format_double(standard_error(times));
        out += '\n';
    }
    return out;
}

} // namespace graphbench
