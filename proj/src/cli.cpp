#include "graphbench/cli.hpp"

#include "graphbench/centrality.hpp"
#include "graphbench/collect.hpp"
#include "graphbench/graph.hpp"
#include "graphbench/orchestrator.hpp"
#include "graphbench/plots.hpp"
#include "graphbench/runfile.hpp"
#include "graphbench/stats.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <time.h>

namespace graphbench {

namespace fs = std::filesystem;

namespace {

struct CliError : std::runtime_error {
    int code;
    CliError(int code_, const std::string& message)
        : std::runtime_error(message), code(code_) {}
};

double cpu_seconds() {
    timespec ts{};
    ::clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
    return double(ts.tv_sec) + 1e-9 * double(ts.tv_nsec);
}

double mean_of(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
}

ExperimentConfig load_config(const std::string& path) {
    try {
        return parse_config_file(path);
    } catch (const std::exception& e) {
        throw CliError(2, e.what());
    }
}

std::pair<std::string, std::string> split_pair(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == text.size())
        throw CliError(2, std::string(flag) + " needs two comma-separated values");
    return {text.substr(0, comma), text.substr(comma + 1)};
}

std::pair<double, double> split_real_pair(const std::string& text, const char* flag) {
    const auto [lo, hi] = split_pair(text, flag);
    try {
        return {std::stod(lo), std::stod(hi)};
    } catch (const std::exception&) {
        throw CliError(2, std::string(flag) + " needs two comma-separated numbers");
    }
}

struct RunArgs {
    std::string algorithm;
    std::string instance;
    double epsilon = 0.01;
    double delta = 0.1;
    std::uint32_t c = 10;
    std::int64_t seed = 0;
    int topk = 25;
    int threads = 1;
    bool directed = false;
};

int cmd_run(const RunArgs& args) {
    if (args.threads != 1)
        std::cerr << "note: only --threads=1 is supported; running single-threaded\n";
    if (args.topk < 1) throw CliError(2, "--topk must be positive");

    Graph full;
    try {
        full = load_edge_list_file(args.instance, args.directed);
    } catch (const std::exception& e) {
        throw CliError(2, std::string("cannot read instance: ") + e.what());
    }
    const ComponentExtraction extraction = largest_component(full);
    std::cerr << "largest component: " << extraction.graph.node_count() << " of "
              << extraction.original_node_count << " nodes, "
              << extraction.graph.edge_count() << " of " << extraction.original_edge_count
              << " edges\n";

    const double cpu_before = cpu_seconds();
    const auto wall_before = std::chrono::steady_clock::now();
    CentralityEstimate estimate;
    if (args.algorithm == "brandes") {
        estimate = brandes_exact(extraction.graph);
    } else if (args.algorithm == "kadabra") {
        KadabraParams params;
        params.epsilon = args.epsilon;
        params.delta = args.delta;
        params.c = args.c;
        params.seed = std::uint64_t(args.seed);
        estimate = kadabra(extraction.graph, params);
    } else {
        estimate = rk(extraction.graph, args.epsilon, args.delta, std::uint64_t(args.seed));
    }
    const double run_time = cpu_seconds() - cpu_before;
    const double wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_before)
            .count();

    RunOutput record;
    record.algorithm = args.algorithm;
    record.instance = fs::path(args.instance).stem().string();
    record.info = capture_metadata();
    record.iterations = estimate.samples_used > 0 ? estimate.samples_used
                                                  : extraction.graph.node_count();
    record.run_time = run_time;
    record.wall_time = wall_time;
    record.parameters["seed"] = args.seed;
    if (args.algorithm == "brandes") {
        record.parameters["epsilon"] = 0.0;
        record.parameters["delta"] = 0.0;
    } else {
        record.parameters["epsilon"] = args.epsilon;
        record.parameters["delta"] = args.delta;
    }
    if (args.algorithm == "kadabra") record.parameters["c"] = std::int64_t(args.c);

    const NodeId n = extraction.graph.node_count();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId u, NodeId v) {
        if (estimate.scores[u] != estimate.scores[v])
            return estimate.scores[u] > estimate.scores[v];
        return u < v;
    });
    const std::size_t k = std::min<std::size_t>(std::size_t(args.topk), order.size());
    for (std::size_t i = 0; i < k; ++i) {
        record.topk_nodes.push_back(std::int64_t(extraction.original_ids[order[i]]));
        record.topk_scores.push_back(estimate.scores[order[i]]);
    }

    std::cout << write_run_output(record);
    return 0;
}

int cmd_download(const std::string& config_path) {
    const ExperimentConfig cfg = load_config(config_path);
    const DownloadReport report = instances_download(cfg);
    for (const auto& name : report.fetched) std::cout << "fetched " << name << "\n";
    for (const auto& name : report.skipped) std::cout << "skipped " << name << "\n";
    for (const auto& [name, reason] : report.failed)
        std::cout << "failed " << name << ": " << reason << "\n";
    std::cout << report.fetched.size() << " fetched, " << report.skipped.size()
              << " skipped, " << report.failed.size() << " failed\n";
    return report.failed.empty() ? 0 : 1;
}

int cmd_launch(const std::string& config_path) {
    const ExperimentConfig cfg = load_config(config_path);
    const LaunchReport report = experiments_launch(cfg);
    std::cout << report.launched << " launched, " << report.skipped << " skipped, "
              << report.finished << " finished, " << report.failed << " failed\n";
    return report.failed > 0 ? 1 : 0;
}

int cmd_list(const std::string& config_path) {
    const ExperimentConfig cfg = load_config(config_path);
    std::printf("%-24s %-24s %4s  %-8s %s\n", "configuration", "instance", "rep", "status",
                "wall[s]");
    for (const auto& row : experiments_list(cfg)) {
        char wall[32] = "";
        if (row.status == RunStatus::running)
            std::snprintf(wall, sizeof wall, "%.1f", row.running_seconds);
        std::printf("%-24s %-24s %4d  %-8s %s\n", row.configuration.c_str(),
                    row.instance.c_str(), row.repetition,
                    run_status_name(row.status).c_str(), wall);
    }
    return 0;
}

RunStatus status_from_name(const std::string& name) {
    if (name == "pending") return RunStatus::pending;
    if (name == "running") return RunStatus::running;
    if (name == "finished") return RunStatus::finished;
    if (name == "failed") return RunStatus::failed;
    throw CliError(2, "unknown status '" + name + "'");
}

struct PurgeArgs {
    std::string config_path;
    std::string configuration;
    std::string instance;
    int repetition = -1;
    std::string status;
    bool all = false;
};

int cmd_purge(const PurgeArgs& args) {
    const ExperimentConfig cfg = load_config(args.config_path);
    PurgeFilter filter;
    if (!args.configuration.empty()) filter.configuration = args.configuration;
    if (!args.instance.empty()) filter.instance = args.instance;
    if (args.repetition >= 0) filter.repetition = args.repetition;
    if (!args.status.empty()) filter.status = status_from_name(args.status);
    filter.all = args.all;
    int removed = 0;
    try {
        removed = experiments_purge(cfg, filter);
    } catch (const std::invalid_argument& e) {
        throw CliError(2, e.what());
    }
    std::cout << removed << " removed\n";
    return 0;
}

/// Attributes for every instance whose edge-list file is present.
std::map<std::string, InstanceProfile> instance_profiles(const ExperimentConfig& cfg) {
    std::map<std::string, InstanceProfile> profiles;
    for (const auto& spec : cfg.instances) {
        const fs::path path = instance_path(cfg, spec);
        if (!fs::exists(path)) continue;
        InstanceProfile profile;
        profile.instance_class = spec.instance_class;
        profile.attributes = compute_instance_attributes(path.string());
        profiles[spec.name] = profile;
    }
    return profiles;
}

ResultFrame collect_frame(const ExperimentConfig& cfg) {
    ResultFrame frame;
    try {
        frame = collect_successful(cfg.output_dir.string());
    } catch (const std::exception& e) {
        throw CliError(1, e.what());
    }
    join_instance_attributes(frame, instance_profiles(cfg));
    for (const auto& [file, reason] : frame.rejected)
        std::cerr << "rejected " << file << ": " << reason << "\n";
    return frame;
}

struct CollectArgs {
    std::string config_path;
    std::string output_dir = "results";
    std::string speedup; // "a,b"
};

int cmd_collect(const CollectArgs& args) {
    const ExperimentConfig cfg = load_config(args.config_path);
    const ResultFrame frame = collect_frame(cfg);
    fs::create_directories(args.output_dir);

    const fs::path runs_path = fs::path(args.output_dir) / "runs.csv";
    std::ofstream(runs_path) << write_runs_csv(frame);
    const fs::path aggregate_path = fs::path(args.output_dir) / "aggregate.csv";
    std::ofstream(aggregate_path) << write_aggregate_csv(frame);
    std::cout << "collected " << frame.rows.size() << " runs into " << runs_path.string()
              << "\n";
    std::cout << "wrote " << aggregate_path.string() << "\n";

    if (!args.speedup.empty()) {
        const auto [a, b] = split_pair(args.speedup, "--speedup");
        const SpeedupTable table = speedup_table(frame, a, b);
        const fs::path speedup_path = fs::path(args.output_dir) / "speedup.csv";
        std::ofstream out(speedup_path);
        out << "instance,mean_a,mean_b,ratio\n";
        for (const auto& row : table.rows)
            out << row.instance << "," << format_double(row.mean_a) << ","
                << format_double(row.mean_b) << "," << format_double(row.ratio) << "\n";
        std::cout << "wrote " << speedup_path.string() << "\n";
        std::cout << "geometric mean speedup: " << format_double(table.geometric_mean_ratio)
                  << "\n";
        for (const auto& name : table.missing_a)
            std::cerr << "note: no '" << a << "' runs on " << name << "\n";
        for (const auto& name : table.missing_b)
            std::cerr << "note: no '" << b << "' runs on " << name << "\n";
        for (const auto& what : table.skew_warnings)
            std::cerr << "warning: skewed repetitions for " << what << "\n";
    }
    return frame.rejected.empty() && frame.failed_markers.empty() ? 0 : 1;
}

std::map<std::string, std::vector<double>> times_by_instance(const ResultFrame& frame,
                                                             const std::string& config) {
    std::map<std::string, std::vector<double>> out;
    for (const auto& row : frame.rows)
        if (row.configuration == config) out[row.instance].push_back(row.run_time);
    return out;
}

std::map<std::string, InstanceAttributes> attributes_by_instance(const ResultFrame& frame) {
    std::map<std::string, InstanceAttributes> out;
    for (const auto& row : frame.rows)
        if (row.attributes) out.emplace(row.instance, *row.attributes);
    return out;
}

std::string pick_configuration(const ExperimentConfig& cfg, const std::string& requested) {
    if (!requested.empty()) return requested;
    if (cfg.configurations.size() == 1) return cfg.configurations[0].name;
    throw CliError(2, "several configurations in the config; pass --configuration");
}

std::pair<std::string, std::string> pick_pair(const ExperimentConfig& cfg,
                                              const std::string& requested,
                                              const char* flag) {
    if (!requested.empty()) return split_pair(requested, flag);
    if (cfg.configurations.size() == 2)
        return {cfg.configurations[0].name, cfg.configurations[1].name};
    throw CliError(2, std::string("pass ") + flag + " a,b to choose two configurations");
}

struct AnalyzeArgs {
    std::string config_path;
    std::string output_dir = "results";
    std::string model;
    std::string configuration;
    std::string pair;
    std::string wilcoxon;
    std::string rope;
    int chains = 4;
    std::int64_t draws = 10000;
    std::int64_t warmup = 1000;
    std::int64_t seed = 0;
};

int cmd_analyze(const AnalyzeArgs& args) {
    if (args.model.empty() && args.wilcoxon.empty())
        throw CliError(2, "analyze needs --model or --wilcoxon");
    // flag syntax problems are usage errors, so check before touching data
    if (!args.pair.empty()) split_pair(args.pair, "--pair");
    if (!args.wilcoxon.empty()) split_pair(args.wilcoxon, "--wilcoxon");
    if (!args.rope.empty()) split_real_pair(args.rope, "--rope");
    const ExperimentConfig cfg = load_config(args.config_path);
    const ResultFrame frame = collect_frame(cfg);

    if (!args.wilcoxon.empty()) {
        const auto [a, b] = pick_pair(cfg, args.wilcoxon, "--wilcoxon");
        const auto times_a = times_by_instance(frame, a);
        const auto times_b = times_by_instance(frame, b);
        PairedSample sample;
        for (const auto& [instance, ta] : times_a) {
            const auto tb = times_b.find(instance);
            if (tb == times_b.end()) continue;
            sample.labels.push_back(instance);
            sample.a.push_back(mean_of(ta));
            sample.b.push_back(mean_of(tb->second));
        }
        if (sample.labels.empty())
            throw CliError(1, "no instances with runs under both configurations");
        const WilcoxonResult result = wilcoxon_signed_rank(sample);
        std::cout << "Wilcoxon signed-rank over " << sample.labels.size()
                  << " instance pairs (" << a << " vs " << b << "): W = "
                  << format_double(result.statistic)
                  << ", two-sided p = " << format_double(result.p_value) << " ("
                  << (result.exact ? "exact" : "normal approximation") << ", "
                  << result.nonzero << " nonzero)\n";
        if (result.all_zero_warning)
            std::cout << "note: all paired differences are zero\n";
    }

    if (args.model.empty()) return 0;

    ModelSpec spec;
    std::string response_note;
    const auto attributes = attributes_by_instance(frame);
    if (args.model == "size_scaling") {
        spec.variant = ModelVariant::size_scaling;
        const std::string configuration = pick_configuration(cfg, args.configuration);
        for (const auto& row : frame.rows) {
            if (row.configuration != configuration) continue;
            const auto attrs = attributes.find(row.instance);
            if (attrs == attributes.end() || row.run_time <= 0.0) continue;
            spec.response.push_back(std::log(row.run_time));
            spec.predictor.push_back(std::log(double(attrs->second.nodes)));
        }
        response_note = "response: log time of '" + configuration + "', predictor: log nodes";
    } else {
        spec.variant = args.model == "relative_time"
                           ? ModelVariant::relative_time
                           : ModelVariant::relative_time_with_diameter;
        const auto [a, b] = pick_pair(cfg, args.pair, "--pair");
        const auto times_a = times_by_instance(frame, a);
        const auto times_b = times_by_instance(frame, b);
        for (const auto& [instance, ta] : times_a) {
            const auto tb = times_b.find(instance);
            const auto attrs = attributes.find(instance);
            if (tb == times_b.end() || attrs == attributes.end()) continue;
            const double mean_a = mean_of(ta);
            const double mean_b = mean_of(tb->second);
            if (mean_a <= 0.0 || mean_b <= 0.0) continue;
            spec.response.push_back(std::log(mean_b / mean_a));
            spec.predictor.push_back(std::log(double(attrs->second.nodes)));
            if (spec.variant == ModelVariant::relative_time_with_diameter)
                spec.log_diameter.push_back(
                    std::log(double(attrs->second.diameter_upper)));
        }
        response_note =
            "response: log(time '" + b + "' / time '" + a + "'), predictor: log nodes";
    }
    if (spec.response.size() < 3)
        throw CliError(1, "not enough usable data points for the model (need >= 3)");

    McmcSettings settings;
    settings.chains = args.chains;
    settings.draws = std::size_t(args.draws);
    settings.warmup = std::size_t(args.warmup);
    settings.seed = std::uint64_t(args.seed);
    const PosteriorTrace trace = mcmc_sample(spec, settings);
    const PosteriorSummary summary = summarize(trace);

    std::cout << response_note << " (" << spec.response.size() << " points)\n";
    std::printf("%-16s | %10s | %10s | %10s\n", "parameter", "HPD 2.5", "Mean", "HPD 97.5");
    for (const auto& parameter : summary.parameters)
        std::printf("%-16s | %10.4f | %10.4f | %10.4f\n", parameter.name.c_str(),
                    parameter.hpd_low, parameter.mean, parameter.hpd_high);
    if (summary.convergence_warning)
        std::cout << "warning: chains may not have converged (R-hat >= 1.05)\n";

    if (spec.variant == ModelVariant::relative_time_with_diameter) {
        const BayesFactor bf = bayes_factor_indicator(trace);
        std::cout << "P(diameter term | data) = " << format_double(bf.inclusion_probability)
                  << ", Bayes factor = " << format_double(bf.bayes_factor)
                  << (bf.resolution_bound ? " (Monte Carlo resolution bound)" : "") << "\n";
    }

    if (!args.rope.empty()) {
        const auto [lo, hi] = split_real_pair(args.rope, "--rope");
        const ParameterSummary* beta = nullptr;
        for (const auto& parameter : summary.parameters)
            if (parameter.name == "beta") beta = &parameter;
        if (beta == nullptr) throw CliError(1, "model has no beta parameter");
        const RopeVerdict verdict = rope_verdict({beta->hpd_low, beta->hpd_high}, lo, hi);
        const char* name = verdict == RopeVerdict::practically_equivalent
                               ? "practically equivalent"
                               : (verdict == RopeVerdict::different ? "different"
                                                                    : "inconclusive");
        std::cout << "beta 95% HPD [" << format_double(beta->hpd_low) << ", "
                  << format_double(beta->hpd_high) << "] vs ROPE ["
                  << format_double(lo) << ", " << format_double(hi) << "]: " << name
                  << "\n";
    }

    fs::create_directories(args.output_dir);
    const fs::path csv_path = fs::path(args.output_dir) / ("analyze_" + args.model + ".csv");
    std::ofstream csv(csv_path);
    csv << "parameter,hpd_low,mean,hpd_high,rhat\n";
    for (const auto& parameter : summary.parameters)
        csv << parameter.name << "," << format_double(parameter.hpd_low) << ","
            << format_double(parameter.mean) << "," << format_double(parameter.hpd_high)
            << "," << format_double(parameter.rhat) << "\n";
    std::cout << "wrote " << csv_path.string() << "\n";
    return 0;
}

struct PlotArgs {
    std::string config_path;
    std::string output_dir = "results";
    std::string figure;
    std::string experiment;
    std::string pair;
    std::string configuration;
};

int cmd_plot(const PlotArgs& args) {
    const ExperimentConfig cfg = load_config(args.config_path);
    const ResultFrame frame = collect_frame(cfg);
    const auto attributes = attributes_by_instance(frame);
    const std::string experiment =
        args.experiment.empty() ? fs::path(args.config_path).stem().string()
                                : args.experiment;

    std::string svg;
    if (args.figure == "scatter") {
        constexpr MarkShape shapes[] = {MarkShape::circle, MarkShape::cross,
                                        MarkShape::square};
        std::vector<PlotSeries> series;
        for (std::size_t i = 0; i < cfg.configurations.size(); ++i) {
            const auto times = times_by_instance(frame, cfg.configurations[i].name);
            PlotSeries s;
            s.label = cfg.configurations[i].name;
            s.mark = shapes[i % std::size(shapes)];
            for (const auto& [instance, values] : times) {
                const auto attrs = attributes.find(instance);
                if (attrs == attributes.end()) continue;
                const double mean_time = mean_of(values);
                if (mean_time <= 0.0) continue;
                s.points.emplace_back(double(attrs->second.nodes), mean_time);
            }
            if (s.points.empty()) continue;
            std::sort(s.points.begin(), s.points.end());
            series.push_back(std::move(s));
        }
        svg = scatter_svg(series, "nodes", "running time [s]");
    } else if (args.figure == "speedup") {
        const auto [a, b] = pick_pair(cfg, args.pair, "--pair");
        SpeedupTable table = speedup_table(frame, a, b);
        // instances ordered by size so the trend reads left to right
        std::stable_sort(table.rows.begin(), table.rows.end(),
                         [&](const SpeedupRow& x, const SpeedupRow& y) {
                             const auto ax = attributes.find(x.instance);
                             const auto ay = attributes.find(y.instance);
                             const std::int64_t nx =
                                 ax == attributes.end() ? -1 : ax->second.nodes;
                             const std::int64_t ny =
                                 ay == attributes.end() ? -1 : ay->second.nodes;
                             return nx < ny;
                         });
        std::vector<std::pair<std::string, double>> ratios;
        for (const auto& row : table.rows) ratios.emplace_back(row.instance, row.ratio);
        svg = speedup_bars_svg(ratios, "time '" + b + "' / time '" + a + "'");
    } else if (args.figure == "boxplot") {
        const std::string configuration = pick_configuration(cfg, args.configuration);
        std::vector<std::pair<std::string, std::vector<double>>> groups;
        for (const auto& [instance, values] : times_by_instance(frame, configuration)) {
            if (values.size() < 2) continue;
            groups.emplace_back(instance, relative_deviation(values));
        }
        if (groups.empty())
            throw CliError(1, "no instance with at least two repetitions of '" +
                                  configuration + "'");
        svg = box_plot_svg(groups, "relative deviation of running time");
    } else {
        throw CliError(2, "unknown figure '" + args.figure + "'");
    }

    fs::create_directories(args.output_dir);
    const fs::path path =
        fs::path(args.output_dir) / (args.figure + "_" + experiment + ".svg");
    std::ofstream(path) << svg;
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"betweenness benchmark pipeline: run algorithms, orchestrate "
                 "experiments, collect, analyze and plot results"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd =
        app.add_subcommand("run", "run one algorithm on one instance, print the record");
    run_cmd->add_option("algorithm", run_args.algorithm, "brandes, kadabra or rk")
        ->required()
        ->check(CLI::IsMember({"brandes", "kadabra", "rk"}));
    run_cmd->add_option("instance", run_args.instance, "edge-list file")->required();
    run_cmd->add_option("--epsilon", run_args.epsilon, "absolute error bound");
    run_cmd->add_option("--delta", run_args.delta, "failure probability");
    run_cmd->add_option("--c", run_args.c, "samples per adaptive stopping check");
    run_cmd->add_option("--seed", run_args.seed, "random seed");
    run_cmd->add_option("--topk", run_args.topk, "top nodes to record");
    run_cmd->add_option("--threads", run_args.threads, "accepted for config compatibility");
    run_cmd->add_flag("--directed", run_args.directed, "treat the edge list as directed");

    CLI::App* instances_cmd = app.add_subcommand("instances", "instance acquisition");
    instances_cmd->require_subcommand(1);
    std::string download_config;
    CLI::App* download_cmd =
        instances_cmd->add_subcommand("download", "fetch or generate missing instances");
    download_cmd->add_option("--config", download_config, "experiments config file")
        ->required();

    CLI::App* experiments_cmd = app.add_subcommand("experiments", "batched runs");
    experiments_cmd->require_subcommand(1);
    std::string launch_config;
    CLI::App* launch_cmd =
        experiments_cmd->add_subcommand("launch", "execute every missing run");
    launch_cmd->add_option("--config", launch_config, "experiments config file")->required();
    std::string list_config;
    CLI::App* list_cmd = experiments_cmd->add_subcommand("list", "show per-run status");
    list_cmd->add_option("--config", list_config, "experiments config file")->required();
    PurgeArgs purge_args;
    CLI::App* purge_cmd =
        experiments_cmd->add_subcommand("purge", "remove selected outputs and markers");
    purge_cmd->add_option("--config", purge_args.config_path, "experiments config file")
        ->required();
    purge_cmd->add_option("--name", purge_args.configuration, "configuration filter");
    purge_cmd->add_option("--instance", purge_args.instance, "instance filter");
    purge_cmd->add_option("--repetition", purge_args.repetition, "repetition filter");
    purge_cmd->add_option("--status", purge_args.status, "status filter")
        ->check(CLI::IsMember({"pending", "running", "finished", "failed"}));
    purge_cmd->add_flag("--all", purge_args.all, "allow purging with no filter");

    CollectArgs collect_args;
    CLI::App* collect_cmd =
        app.add_subcommand("collect", "gather run outputs into CSV tables");
    collect_cmd->add_option("--config", collect_args.config_path, "experiments config file")
        ->required();
    collect_cmd->add_option("--output-dir", collect_args.output_dir, "where to write CSVs");
    collect_cmd->add_option("--speedup", collect_args.speedup,
                            "configuration pair a,b for a speedup table");

    AnalyzeArgs analyze_args;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "statistical evaluation of collected runs");
    analyze_cmd->add_option("--config", analyze_args.config_path, "experiments config file")
        ->required();
    analyze_cmd->add_option("--output-dir", analyze_args.output_dir,
                            "where to write summaries");
    analyze_cmd
        ->add_option("--model", analyze_args.model, "posterior model to fit")
        ->check(CLI::IsMember(
            {"size_scaling", "relative_time", "relative_time_with_diameter"}));
    analyze_cmd->add_option("--configuration", analyze_args.configuration,
                            "configuration for size_scaling");
    analyze_cmd->add_option("--pair", analyze_args.pair,
                            "configuration pair a,b for relative models");
    analyze_cmd->add_option("--wilcoxon", analyze_args.wilcoxon,
                            "configuration pair a,b for a signed-rank test");
    analyze_cmd->add_option("--rope", analyze_args.rope,
                            "lo,hi practical-equivalence region for beta");
    analyze_cmd->add_option("--chains", analyze_args.chains, "MCMC chains");
    analyze_cmd->add_option("--draws", analyze_args.draws, "post-warmup draws per chain");
    analyze_cmd->add_option("--warmup", analyze_args.warmup, "warmup sweeps per chain");
    analyze_cmd->add_option("--seed", analyze_args.seed, "MCMC seed");

    PlotArgs plot_args;
    CLI::App* plot_cmd = app.add_subcommand("plot", "render collected results as SVG");
    plot_cmd->add_option("--config", plot_args.config_path, "experiments config file")
        ->required();
    plot_cmd->add_option("--output-dir", plot_args.output_dir, "where to write figures");
    plot_cmd->add_option("--figure", plot_args.figure, "scatter, speedup or boxplot")
        ->required()
        ->check(CLI::IsMember({"scatter", "speedup", "boxplot"}));
    plot_cmd->add_option("--experiment", plot_args.experiment,
                         "label used in the output file name");
    plot_cmd->add_option("--pair", plot_args.pair, "configuration pair a,b for speedup");
    plot_cmd->add_option("--configuration", plot_args.configuration,
                         "configuration for boxplot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*run_cmd) return cmd_run(run_args);
        if (*download_cmd) return cmd_download(download_config);
        if (*launch_cmd) return cmd_launch(launch_config);
        if (*list_cmd) return cmd_list(list_config);
        if (*purge_cmd) return cmd_purge(purge_args);
        if (*collect_cmd) return cmd_collect(collect_args);
        if (*analyze_cmd) return cmd_analyze(analyze_args);
        if (*plot_cmd) return cmd_plot(plot_args);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace graphbench
