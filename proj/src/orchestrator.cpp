#include "graphbench/orchestrator.hpp"

#include "graphbench/graph.hpp"
#include "graphbench/runfile.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace graphbench {

namespace fs = std::filesystem;

namespace {

constexpr const char* kPlaceholder = "@INSTANCE@";
constexpr const char* kTempInfix = ".out.tmp.";

void require_keys(const YAML::Node& node, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    std::vector<std::string> unknown;
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            unknown.push_back(key);
    }
    if (unknown.empty()) return;
    std::sort(unknown.begin(), unknown.end());
    std::string message = "unknown keys in " + where + ": ";
    for (std::size_t i = 0; i < unknown.size(); ++i) {
        if (i) message += ", ";
        message += unknown[i];
    }
    throw std::runtime_error(message);
}

void validate_name(const std::string& name, const std::string& what) {
    if (name.empty()) throw std::runtime_error(what + " name must not be empty");
    if (name.find('@') != std::string::npos || name.find('/') != std::string::npos)
        throw std::runtime_error(what + " name '" + name + "' must not contain '@' or '/'");
}

InstanceSpec parse_instance(const YAML::Node& item) {
    if (!item.IsMap() || !item["name"])
        throw std::runtime_error("every instance needs a name");
    InstanceSpec spec;
    spec.name = item["name"].as<std::string>();
    validate_name(spec.name, "instance");
    require_keys(item,
                 {"name", "class", "url", "bytes", "path", "generator", "nodes", "edges",
                  "seed"},
                 "instance '" + spec.name + "'");
    if (item["class"]) spec.instance_class = item["class"].as<std::string>();
    int sources = 0;
    if (item["url"]) {
        spec.url = item["url"].as<std::string>();
        ++sources;
    }
    if (item["path"]) {
        spec.path = item["path"].as<std::string>();
        ++sources;
    }
    if (item["generator"]) {
        GeneratorSpec gen;
        gen.kind = item["generator"].as<std::string>();
        if (gen.kind != "gnm")
            throw std::runtime_error("generator '" + gen.kind + "' is not supported; use gnm");
        if (!item["nodes"] || !item["edges"])
            throw std::runtime_error("generator instance '" + spec.name +
                                     "' needs nodes and edges");
        gen.nodes = item["nodes"].as<std::int64_t>();
        gen.edges = item["edges"].as<std::int64_t>();
        if (gen.nodes <= 0 || gen.edges < 0)
            throw std::runtime_error("instance '" + spec.name +
                                     "' needs positive nodes and non-negative edges");
        if (item["seed"]) gen.seed = item["seed"].as<std::uint64_t>();
        spec.generator = gen;
        ++sources;
    } else if (item["nodes"] || item["edges"] || item["seed"]) {
        throw std::runtime_error("instance '" + spec.name +
                                 "': nodes, edges and seed apply only to generator sources");
    }
    if (item["bytes"]) {
        if (spec.url.empty())
            throw std::runtime_error("instance '" + spec.name +
                                     "': bytes applies only to url sources");
        spec.bytes = item["bytes"].as<std::uint64_t>();
    }
    if (sources != 1)
        throw std::runtime_error("instance '" + spec.name +
                                 "' must set exactly one of url, path, generator");
    return spec;
}

ConfigSpec parse_configuration(const YAML::Node& item) {
    if (!item.IsMap() || !item["name"])
        throw std::runtime_error("every configuration needs a name");
    ConfigSpec spec;
    spec.name = item["name"].as<std::string>();
    validate_name(spec.name, "configuration");
    require_keys(item, {"name", "args", "output"}, "configuration '" + spec.name + "'");
    const YAML::Node args = item["args"];
    if (!args || !args.IsSequence() || args.size() == 0)
        throw std::runtime_error("configuration '" + spec.name +
                                 "' needs a non-empty args list");
    bool has_placeholder = false;
    for (const YAML::Node& arg : args) {
        spec.args.push_back(arg.as<std::string>());
        if (spec.args.back().find(kPlaceholder) != std::string::npos) has_placeholder = true;
    }
    if (!has_placeholder)
        throw std::runtime_error("args for configuration '" + spec.name + "' must mention " +
                                 kPlaceholder);
    if (item["output"]) spec.output = item["output"].as<std::string>();
    if (spec.output != "stdout")
        throw std::runtime_error("output mode '" + spec.output +
                                 "' is not supported; use stdout");
    return spec;
}

fs::path marker_path(fs::path out) {
    out.replace_extension(".failed");
    return out;
}

void write_marker(const fs::path& marker, const std::string& reason) {
    std::ofstream stream(marker);
    stream << reason << "\n";
}

std::optional<pid_t> temp_file_pid(const std::string& filename) {
    const auto at = filename.find(kTempInfix);
    if (at == std::string::npos) return std::nullopt;
    const std::string digits = filename.substr(at + std::string(kTempInfix).size());
    pid_t pid = 0;
    const auto parsed = std::from_chars(digits.data(), digits.data() + digits.size(), pid);
    if (parsed.ec != std::errc() || parsed.ptr != digits.data() + digits.size() || pid <= 0)
        return std::nullopt;
    return pid;
}

// leftovers from an orchestrator that died mid-run
void remove_stale_temp_files(const fs::path& output_dir) {
    if (!fs::exists(output_dir)) return;
    for (const auto& entry : fs::directory_iterator(output_dir)) {
        if (!entry.is_regular_file()) continue;
        const auto pid = temp_file_pid(entry.path().filename().string());
        if (!pid) continue;
        if (::kill(*pid, 0) != 0) {
            std::error_code ignored;
            fs::remove(entry.path(), ignored);
        }
    }
}

bool http_fetch(const std::string& url, std::string& body, std::string& error) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        error = "malformed url";
        return false;
    }
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    httplib::Client client(base);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(300);
    auto res = client.Get(path);
    if (!res) {
        error = "request failed: " + httplib::to_string(res.error());
        return false;
    }
    if (res->status != 200) {
        error = "http status " + std::to_string(res->status);
        return false;
    }
    body = std::move(res->body);
    return true;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    try {
        const YAML::Node root = YAML::Load(text);
        if (!root.IsMap()) throw std::runtime_error("experiment config must be a mapping");
        require_keys(root,
                     {"instances", "configurations", "repetitions", "max_parallel",
                      "base_seed", "timeout_hours", "instance_dir", "output_dir"},
                     "experiment config");

        ExperimentConfig cfg;
        const YAML::Node instances = root["instances"];
        if (!instances || !instances.IsSequence() || instances.size() == 0)
            throw std::runtime_error("instances must be a non-empty list");
        for (const YAML::Node& item : instances) cfg.instances.push_back(parse_instance(item));

        const YAML::Node configurations = root["configurations"];
        if (!configurations || !configurations.IsSequence() || configurations.size() == 0)
            throw std::runtime_error("configurations must be a non-empty list");
        for (const YAML::Node& item : configurations)
            cfg.configurations.push_back(parse_configuration(item));

        if (root["repetitions"]) cfg.repetitions = root["repetitions"].as<int>();
        if (cfg.repetitions < 1) throw std::runtime_error("repetitions must be positive");
        if (root["max_parallel"]) cfg.max_parallel = root["max_parallel"].as<int>();
        if (cfg.max_parallel < 1) throw std::runtime_error("max_parallel must be positive");
        if (root["base_seed"]) cfg.base_seed = root["base_seed"].as<std::int64_t>();
        if (root["timeout_hours"]) cfg.timeout_hours = root["timeout_hours"].as<double>();
        if (!(cfg.timeout_hours > 0.0))
            throw std::runtime_error("timeout_hours must be positive");
        if (root["instance_dir"]) cfg.instance_dir = root["instance_dir"].as<std::string>();
        if (root["output_dir"]) cfg.output_dir = root["output_dir"].as<std::string>();

        std::set<std::string> seen;
        for (const auto& spec : cfg.instances)
            if (!seen.insert(spec.name).second)
                throw std::runtime_error("duplicate instance name '" + spec.name + "'");
        seen.clear();
        for (const auto& spec : cfg.configurations)
            if (!seen.insert(spec.name).second)
                throw std::runtime_error("duplicate configuration name '" + spec.name + "'");
        return cfg;
    } catch (const YAML::Exception& e) {
        throw std::runtime_error(std::string("experiment config: ") + e.what());
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_config(buffer.str());
}

fs::path instance_path(const ExperimentConfig& cfg, const InstanceSpec& spec) {
    if (!spec.path.empty()) return spec.path;
    return cfg.instance_dir / (spec.name + ".edges");
}

fs::path run_output_path(const ExperimentConfig& cfg, const std::string& configuration,
                         const std::string& instance, int repetition) {
    return cfg.output_dir /
           (configuration + "@" + instance + "@" + std::to_string(repetition) + ".out");
}

std::string run_status_name(RunStatus status) {
    switch (status) {
    case RunStatus::pending: return "pending";
    case RunStatus::running: return "running";
    case RunStatus::finished: return "finished";
    case RunStatus::failed: return "failed";
    }
    return "unknown";
}

DownloadReport instances_download(const ExperimentConfig& cfg) {
    DownloadReport report;
    fs::create_directories(cfg.instance_dir);
    for (const auto& spec : cfg.instances) {
        const fs::path target = instance_path(cfg, spec);
        if (fs::exists(target)) {
            report.skipped.push_back(spec.name);
            continue;
        }
        if (!spec.path.empty()) {
            report.failed.emplace_back(spec.name, "missing local file " + target.string());
            continue;
        }
        std::string payload;
        if (spec.generator) {
            const auto& gen = *spec.generator;
            payload = write_edge_list(
                generate_gnm(NodeId(gen.nodes), std::uint64_t(gen.edges), gen.seed));
        } else {
            std::string reason;
            if (!http_fetch(spec.url, payload, reason)) {
                report.failed.emplace_back(spec.name, reason);
                continue;
            }
            if (spec.bytes && payload.size() != *spec.bytes) {
                report.failed.emplace_back(
                    spec.name, "size mismatch: expected " + std::to_string(*spec.bytes) +
                                   " bytes, got " + std::to_string(payload.size()));
                continue;
            }
        }
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            out << payload;
            if (!out) {
                std::error_code ignored;
                fs::remove(tmp, ignored);
                report.failed.emplace_back(spec.name, "cannot write " + target.string());
                continue;
            }
        }
        fs::rename(tmp, target);
        report.fetched.push_back(spec.name);
    }
    return report;
}

LaunchReport experiments_launch(const ExperimentConfig& cfg) {
    using clock = std::chrono::steady_clock;
    fs::create_directories(cfg.output_dir);
    remove_stale_temp_files(cfg.output_dir);

    struct Job {
        const ConfigSpec* config;
        const InstanceSpec* instance;
        int repetition;
        fs::path out;
        fs::path marker;
    };
    LaunchReport report;
    std::vector<Job> todo;
    for (const auto& config : cfg.configurations)
        for (const auto& instance : cfg.instances)
            for (int rep = 0; rep < cfg.repetitions; ++rep) {
                fs::path out = run_output_path(cfg, config.name, instance.name, rep);
                fs::path marker = marker_path(out);
                if (fs::exists(out) || fs::exists(marker)) {
                    ++report.skipped;
                    continue;
                }
                todo.push_back({&config, &instance, rep, std::move(out), std::move(marker)});
            }

    struct Child {
        pid_t pid;
        std::size_t job;
        fs::path tmp;
        clock::time_point started;
    };
    std::vector<Child> running;
    const double timeout_seconds = cfg.timeout_hours * 3600.0;
    std::size_t next = 0;

    const auto settle = [&](const Child& child, int status) {
        const Job& job = todo[child.job];
        if (WIFEXITED(status) && WEXITSTATUS(status) == 0 && fs::exists(child.tmp)) {
            fs::rename(child.tmp, job.out);
            ++report.finished;
            return;
        }
        std::error_code ignored;
        fs::remove(child.tmp, ignored);
        const std::string reason =
            WIFSIGNALED(status) ? "killed by signal " + std::to_string(WTERMSIG(status))
                                : "exit code " + std::to_string(WEXITSTATUS(status));
        write_marker(job.marker, reason);
        ++report.failed;
    };

    while (next < todo.size() || !running.empty()) {
        while (next < todo.size() && running.size() < std::size_t(cfg.max_parallel)) {
            const Job& job = todo[next];
            std::vector<std::string> args;
            const std::string target = instance_path(cfg, *job.instance).string();
            for (std::string token : job.config->args) {
                for (auto at = token.find(kPlaceholder); at != std::string::npos;
                     at = token.find(kPlaceholder))
                    token.replace(at, std::string(kPlaceholder).size(), target);
                args.push_back(std::move(token));
            }
            args.push_back("--seed=" + std::to_string(cfg.base_seed + job.repetition));

            const pid_t pid = ::fork();
            if (pid > 0) ::setpgid(pid, pid); // parent side of the leader race
            if (pid < 0) {
                write_marker(job.marker, "fork failed");
                ++report.failed;
                ++next;
                continue;
            }
            if (pid == 0) {
                // own process group, so a timeout can kill the whole tree
                ::setpgid(0, 0);
                const std::string tmp = job.out.string() + ".tmp." + std::to_string(::getpid());
                const int fd = ::open(tmp.c_str(), O_CREAT | O_TRUNC | O_WRONLY, 0644);
                if (fd < 0) ::_exit(127);
                ::dup2(fd, STDOUT_FILENO);
                ::close(fd);
                std::vector<char*> argv;
                argv.reserve(args.size() + 1);
                for (auto& arg : args) argv.push_back(arg.data());
                argv.push_back(nullptr);
                ::execvp(argv[0], argv.data());
                ::_exit(127);
            }
            running.push_back(
                {pid, next, fs::path(job.out.string() + ".tmp." + std::to_string(pid)),
                 clock::now()});
            ++report.launched;
            ++next;
        }

        bool progressed = false;
        for (std::size_t i = 0; i < running.size();) {
            int status = 0;
            if (::waitpid(running[i].pid, &status, WNOHANG) == running[i].pid) {
                settle(running[i], status);
                running.erase(running.begin() + std::ptrdiff_t(i));
                progressed = true;
                continue;
            }
            const double elapsed =
                std::chrono::duration<double>(clock::now() - running[i].started).count();
            if (elapsed > timeout_seconds) {
                ::kill(-running[i].pid, SIGKILL);
                ::waitpid(running[i].pid, &status, 0);
                const Job& job = todo[running[i].job];
                std::error_code ignored;
                fs::remove(running[i].tmp, ignored);
                write_marker(job.marker,
                             "timeout after " + format_double(cfg.timeout_hours) + " hours");
                ++report.failed;
                running.erase(running.begin() + std::ptrdiff_t(i));
                progressed = true;
                continue;
            }
            ++i;
        }
        if (!progressed && !running.empty())
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    return report;
}

std::vector<RunDescriptor> experiments_list(const ExperimentConfig& cfg) {
    std::map<std::string, double> in_flight; // output filename -> seconds running
    if (fs::exists(cfg.output_dir)) {
        for (const auto& entry : fs::directory_iterator(cfg.output_dir)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            const auto pid = temp_file_pid(name);
            if (!pid || ::kill(*pid, 0) != 0) continue;
            const auto age = fs::file_time_type::clock::now() - fs::last_write_time(entry);
            const auto at = name.find(kTempInfix);
            in_flight[name.substr(0, at + 4)] =
                std::max(0.0, std::chrono::duration<double>(age).count());
        }
    }

    std::vector<RunDescriptor> rows;
    for (const auto& config : cfg.configurations)
        for (const auto& instance : cfg.instances)
            for (int rep = 0; rep < cfg.repetitions; ++rep) {
                RunDescriptor row;
                row.configuration = config.name;
                row.instance = instance.name;
                row.repetition = rep;
                row.seed = cfg.base_seed + rep;
                row.output_path = run_output_path(cfg, config.name, instance.name, rep);
                if (fs::exists(row.output_path)) {
                    row.status = RunStatus::finished;
                } else if (fs::exists(marker_path(row.output_path))) {
                    row.status = RunStatus::failed;
                } else if (const auto hit =
                               in_flight.find(row.output_path.filename().string());
                           hit != in_flight.end()) {
                    row.status = RunStatus::running;
                    row.running_seconds = hit->second;
                } else {
                    row.status = RunStatus::pending;
                }
                rows.push_back(std::move(row));
            }
    return rows;
}

int experiments_purge(const ExperimentConfig& cfg, const PurgeFilter& filter) {
    const bool narrowed = filter.configuration.has_value() || filter.instance.has_value() ||
                          filter.repetition.has_value() || filter.status.has_value();
    if (!narrowed && !filter.all)
        throw std::invalid_argument(
            "refusing to purge every run; narrow the filter or set the all flag");
    int removed = 0;
    for (const auto& row : experiments_list(cfg)) {
        if (filter.configuration && row.configuration != *filter.configuration) continue;
        if (filter.instance && row.instance != *filter.instance) continue;
        if (filter.repetition && row.repetition != *filter.repetition) continue;
        if (filter.status && row.status != *filter.status) continue;
        std::error_code ignored;
        if (fs::remove(row.output_path, ignored)) ++removed;
        if (fs::remove(marker_path(row.output_path), ignored)) ++removed;
    }
    return removed;
}

} // namespace graphbench
