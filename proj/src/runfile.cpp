#include "graphbench/runfile.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace graphbench {

std::string format_double(double value) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string s(buf.data(), ptr);
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_of("in") == std::string::npos) // inf/nan pass through
        s += ".0";
    return s;
}

namespace {

bool is_hex(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f'))) return false;
    return true;
}

bool valid_commit(const std::string& s) {
    if (s == "unknown") return true;
    if (s.rfind("dirty+", 0) == 0) return is_hex(s.substr(6));
    return is_hex(s);
}

bool valid_date(const std::string& s) {
    // YYYY-MM-DDTHH:MM:SS with optional fractional seconds
    if (s.size() < 19) return false;
    auto digit = [&](std::size_t i) { return s[i] >= '0' && s[i] <= '9'; };
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u})
        if (!digit(i)) return false;
    if (s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' || s[16] != ':') return false;
    if (s.size() == 19) return true;
    if (s[19] != '.' || s.size() == 20) return false;
    for (std::size_t i = 20; i < s.size(); ++i)
        if (!digit(i)) return false;
    return true;
}

bool plain_scalar_safe(const std::string& s) {
    if (s.empty()) return false;
    if (s.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                            "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                            "0123456789._+-/") != std::string::npos)
        return false;
    return s[0] != '-' && s[0] != '.';
}

std::string quote_scalar(const std::string& s) {
    if (plain_scalar_safe(s)) return s;
    std::string out = "'";
    for (char ch : s) {
        out += ch;
        if (ch == '\'') out += ch;
    }
    out += "'";
    return out;
}

void validate(const RunOutput& r) {
    if (!valid_commit(r.info.commit))
        throw std::invalid_argument("run record: commit must be hex, dirty+<hex>, or unknown");
    if (!valid_date(r.info.date))
        throw std::invalid_argument("run record: date must be an ISO-8601 timestamp");
    if (r.info.host.empty()) throw std::invalid_argument("run record: host must not be empty");
    if (!(r.run_time >= 0.0) || !std::isfinite(r.run_time))
        throw std::invalid_argument("run record: run_time must be finite and non-negative");
    if (r.wall_time && (!(*r.wall_time >= 0.0) || !std::isfinite(*r.wall_time)))
        throw std::invalid_argument("run record: wall_time must be finite and non-negative");
    for (const char* key : {"delta", "epsilon", "seed"})
        if (!r.parameters.count(key))
            throw std::invalid_argument(std::string("run record: missing parameter ") + key);
    if (!std::holds_alternative<std::int64_t>(r.parameters.at("seed")))
        throw std::invalid_argument("run record: parameter seed must be an integer");
    if (r.topk_nodes.size() != r.topk_scores.size())
        throw std::invalid_argument("run record: topk_nodes and topk_scores lengths differ");
    for (std::size_t i = 0; i + 1 < r.topk_scores.size(); ++i)
        if (r.topk_scores[i] < r.topk_scores[i + 1])
            throw std::invalid_argument("run record: topk_scores must be non-increasing");
    for (std::int64_t v : r.topk_nodes)
        if (v < 0) throw std::invalid_argument("run record: topk_nodes must be non-negative");
    if ((r.algorithm == "kadabra" || r.algorithm == "rk") && r.iterations == 0)
        throw std::invalid_argument("run record: sampling algorithms need iterations >= 1");
}

std::string format_param(const ParamValue& v) {
    if (std::holds_alternative<std::int64_t>(v))
        return std::to_string(std::get<std::int64_t>(v));
    return format_double(std::get<double>(v));
}

} // namespace

std::string write_run_output(const RunOutput& r) {
    validate(r);
    std::ostringstream out;
    out << "algorithm: " << quote_scalar(r.algorithm) << '\n';
    out << "info:\n";
    out << "  commit: " << quote_scalar(r.info.commit) << '\n';
    out << "  date: '" << r.info.date << "'\n";
    out << "  host: " << quote_scalar(r.info.host) << '\n';
    out << "instance: " << quote_scalar(r.instance) << '\n';
    out << "iterations: " << r.iterations << '\n';
    out << "parameters:\n";
    for (const auto& [key, value] : r.parameters)
        out << "  " << quote_scalar(key) << ": " << format_param(value) << '\n';
    out << "run_time: " << format_double(r.run_time) << '\n';
    if (r.topk_nodes.empty()) {
        out << "topk_nodes: []\n";
        out << "topk_scores: []\n";
    } else {
        out << "topk_nodes:\n";
        for (std::int64_t v : r.topk_nodes) out << "- " << v << '\n';
        out << "topk_scores:\n";
        for (double v : r.topk_scores) out << "- " << format_double(v) << '\n';
    }
    if (r.wall_time) out << "wall_time: " << format_double(*r.wall_time) << '\n';
    return out.str();
}

namespace {

bool scalar_is_int(const std::string& raw, std::int64_t& out) {
    if (raw.empty()) return false;
    const char* first = raw.data();
    const char* last = first + raw.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool scalar_is_real(const std::string& raw, double& out) {
    if (raw.empty()) return false;
    char* end = nullptr;
    out = std::strtod(raw.c_str(), &end);
    return end == raw.c_str() + raw.size();
}

struct Reject {
    std::string message;
};

std::string require_string(const YAML::Node& node, const char* key) {
    if (!node || !node.IsScalar()) throw Reject{std::string("missing or invalid key: ") + key};
    return node.as<std::string>();
}

} // namespace

RunParse parse_run_output(const std::string& text) {
    RunParse result;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        result.error = std::string("not valid YAML: ") + e.what();
        return result;
    }
    try {
        if (!root.IsMap()) throw Reject{"record is not a mapping"};

        static const char* known[] = {"algorithm", "info",       "instance",
                                      "iterations", "parameters", "run_time",
                                      "topk_nodes", "topk_scores", "wall_time"};
        for (const auto& entry : root) {
            const std::string key = entry.first.as<std::string>();
            bool ok = false;
            for (const char* k : known) ok = ok || key == k;
            if (!ok) throw Reject{"unknown key: " + key};
        }

        RunOutput r;
        if (root["algorithm"]) r.algorithm = require_string(root["algorithm"], "algorithm");
        if (root["instance"]) r.instance = require_string(root["instance"], "instance");

        const YAML::Node info = root["info"];
        if (!info || !info.IsMap()) throw Reject{"missing or invalid key: info"};
        r.info.commit = require_string(info["commit"], "info.commit");
        r.info.date = require_string(info["date"], "info.date");
        r.info.host = require_string(info["host"], "info.host");
        if (!valid_commit(r.info.commit)) throw Reject{"invalid key: info.commit"};
        if (!valid_date(r.info.date)) throw Reject{"invalid key: info.date"};

        const YAML::Node iters = root["iterations"];
        std::int64_t iterations = 0;
        if (!iters || !iters.IsScalar() || !scalar_is_int(iters.Scalar(), iterations) ||
            iterations < 0)
            throw Reject{"missing or invalid key: iterations"};
        r.iterations = static_cast<std::uint64_t>(iterations);

        const YAML::Node params = root["parameters"];
        if (!params || !params.IsMap()) throw Reject{"missing or invalid key: parameters"};
        for (const auto& entry : params) {
            const std::string key = entry.first.as<std::string>();
            if (!entry.second.IsScalar()) throw Reject{"parameter " + key + " is not a scalar"};
            const std::string raw = entry.second.Scalar();
            std::int64_t iv = 0;
            double dv = 0.0;
            if (scalar_is_int(raw, iv)) r.parameters[key] = iv;
            else if (scalar_is_real(raw, dv)) r.parameters[key] = dv;
            else throw Reject{"parameter " + key + " is not numeric"};
        }
        for (const char* key : {"delta", "epsilon", "seed"})
            if (!r.parameters.count(key)) throw Reject{std::string("missing key: parameters.") + key};
        if (!std::holds_alternative<std::int64_t>(r.parameters.at("seed")))
            throw Reject{"parameter seed must be an integer"};

        const YAML::Node rt = root["run_time"];
        double run_time = 0.0;
        if (!rt || !rt.IsScalar() || !scalar_is_real(rt.Scalar(), run_time) || run_time < 0.0 ||
            !std::isfinite(run_time))
            throw Reject{"missing or invalid key: run_time"};
        r.run_time = run_time;

        const YAML::Node wt = root["wall_time"];
        if (wt) {
            double wall = 0.0;
            if (!wt.IsScalar() || !scalar_is_real(wt.Scalar(), wall) || wall < 0.0 ||
                !std::isfinite(wall))
                throw Reject{"invalid key: wall_time"};
            r.wall_time = wall;
        }

        const YAML::Node nodes = root["topk_nodes"];
        if (!nodes || !nodes.IsSequence()) throw Reject{"missing or invalid key: topk_nodes"};
        for (const auto& item : nodes) {
            std::int64_t v = 0;
            if (!item.IsScalar() || !scalar_is_int(item.Scalar(), v) || v < 0)
                throw Reject{"invalid entry in topk_nodes"};
            r.topk_nodes.push_back(v);
        }
        const YAML::Node scores = root["topk_scores"];
        if (!scores || !scores.IsSequence()) throw Reject{"missing or invalid key: topk_scores"};
        for (const auto& item : scores) {
            double v = 0.0;
            if (!item.IsScalar() || !scalar_is_real(item.Scalar(), v))
                throw Reject{"invalid entry in topk_scores"};
            r.topk_scores.push_back(v);
        }
        if (r.topk_nodes.size() != r.topk_scores.size())
            throw Reject{"topk_nodes and topk_scores lengths differ"};
        for (std::size_t i = 0; i + 1 < r.topk_scores.size(); ++i)
            if (r.topk_scores[i] < r.topk_scores[i + 1])
                throw Reject{"topk_scores must be non-increasing"};
        if ((r.algorithm == "kadabra" || r.algorithm == "rk") && r.iterations == 0)
            throw Reject{"sampling algorithms need iterations >= 1"};

        result.record = std::move(r);
    } catch (const Reject& reject) {
        result.error = reject.message;
    }
    return result;
}

namespace {

std::string run_command(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return {};
    std::string output;
    char buf[256];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    if (pclose(pipe) != 0) return {};
    while (!output.empty() && (output.back() == '\n' || output.back() == '\r')) output.pop_back();
    return output;
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char ch : s) {
        if (ch == '\'') out += "'\\''";
        else out += ch;
    }
    out += "'";
    return out;
}

} // namespace

RunInfo capture_metadata(const std::string& repo_dir) {
    RunInfo info;
    const std::string dir = shell_quote(repo_dir);
    std::string head = run_command("git -C " + dir + " rev-parse HEAD 2>/dev/null");
    if (!is_hex(head)) {
        info.commit = "unknown";
    } else {
        const std::string status = run_command("git -C " + dir + " status --porcelain 2>/dev/null");
        info.commit = status.empty() ? head : "dirty+" + head;
    }

    const auto now = std::chrono::system_clock::now();
    const std::time_t secs = std::chrono::system_clock::to_time_t(now);
    const auto micros = static_cast<int>(
        std::chrono::duration_cast<std::chrono::microseconds>(now.time_since_epoch()).count() %
        1000000);
    std::tm tm{};
    localtime_r(&secs, &tm);
    char stamp[64];
    std::snprintf(stamp, sizeof stamp, "%04d-%02d-%02dT%02d:%02d:%02d.%06d", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, micros);
    info.date = stamp;

    char host[256];
    info.host = gethostname(host, sizeof host) == 0 ? host : "unknown";
    return info;
}

} // namespace graphbench
