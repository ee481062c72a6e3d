#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graphbench {

struct GeneratorSpec {
    std::string kind; // only "gnm"
    std::int64_t nodes = 0;
    std::int64_t edges = 0;
    std::uint64_t seed = 0;
};

/// Exactly one of url, path, generator is set.
struct InstanceSpec {
    std::string name;
    std::string instance_class;
    std::string url;
    std::optional<std::uint64_t> bytes; // expected download size, url sources only
    std::string path;
    std::optional<GeneratorSpec> generator;
};

struct ConfigSpec {
    std::string name;
    std::vector<std::string> args; // template; @INSTANCE@ is substituted at launch
    std::string output = "stdout";
};

struct ExperimentConfig {
    std::vector<InstanceSpec> instances;
    std::vector<ConfigSpec> configurations;
    int repetitions = 5;
    int max_parallel = 1;
    std::int64_t base_seed = 0;
    double timeout_hours = 7.0;
    std::filesystem::path instance_dir = "instances";
    std::filesystem::path output_dir = "output";
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Where the instance's edge list lives: the configured path for local
/// sources, `<instance_dir>/<name>.edges` for downloaded or generated ones.
std::filesystem::path instance_path(const ExperimentConfig& cfg, const InstanceSpec& spec);

std::filesystem::path run_output_path(const ExperimentConfig& cfg,
                                      const std::string& configuration,
                                      const std::string& instance, int repetition);

enum class RunStatus { pending, running, finished, failed };

std::string run_status_name(RunStatus status);

struct RunDescriptor {
    std::string configuration;
    std::string instance;
    int repetition = 0;
    std::int64_t seed = 0;
    std::filesystem::path output_path;
    RunStatus status = RunStatus::pending;
    double running_seconds = 0.0; // wall clock so far, running rows only
};

struct DownloadReport {
    std::vector<std::string> fetched;
    std::vector<std::string> skipped;
    std::vector<std::pair<std::string, std::string>> failed; // name, reason
};

/// Fetches or generates every missing instance; existing files are kept.
DownloadReport instances_download(const ExperimentConfig& cfg);

struct LaunchReport {
    int launched = 0;
    int skipped = 0;
    int finished = 0;
    int failed = 0;
};

/// Runs every (configuration, instance, repetition) that has neither an
/// output file nor a failure marker, at most max_parallel at a time.
/// Output goes to a temp file and is renamed into place only on exit 0;
/// nonzero exit or timeout leaves a `.failed` marker instead.
LaunchReport experiments_launch(const ExperimentConfig& cfg);

std::vector<RunDescriptor> experiments_list(const ExperimentConfig& cfg);

struct PurgeFilter {
    std::optional<std::string> configuration;
    std::optional<std::string> instance;
    std::optional<int> repetition;
    std::optional<RunStatus> status;
    bool all = false; // required when no other field narrows the selection
};

/// Removes output and marker files for matching runs, returns the count.
int experiments_purge(const ExperimentConfig& cfg, const PurgeFilter& filter);

} // namespace graphbench
