#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace graphbench {

/// Parameter values keep their YAML type: integers stay integers so that
/// parse(write(r)) reproduces r exactly.
using ParamValue = std::variant<std::int64_t, double>;

struct RunInfo {
    std::string commit; ///< hex id, "dirty+<hex>" for unclean trees, or "unknown"
    std::string date;   ///< ISO-8601 local timestamp with microseconds
    std::string host;

    bool operator==(const RunInfo&) const = default;
};

/**
 * One benchmark run as recorded on stdout. The serialized layout is fixed:
 * top-level keys in alphabetical order (algorithm, info, instance, iterations,
 * parameters, run_time, topk_nodes, topk_scores, then wall_time when present),
 * reals in shortest round-trip form, top-k lists as block sequences.
 */
struct RunOutput {
    std::string algorithm; ///< brandes | kadabra | rk; may be absent in older records
    RunInfo info;
    std::string instance;
    std::uint64_t iterations = 0;
    std::map<std::string, ParamValue> parameters; ///< requires delta, epsilon, seed
    double run_time = 0.0; ///< CPU seconds spent in the algorithm itself
    std::optional<double> wall_time;
    std::vector<std::int64_t> topk_nodes;
    std::vector<double> topk_scores; ///< non-increasing, aligned with topk_nodes

    bool operator==(const RunOutput&) const = default;
};

/// Serializes a record; throws std::invalid_argument when an invariant is
/// broken (score order, list lengths, commit format, negative times, ...).
std::string write_run_output(const RunOutput& record);

struct RunParse {
    std::optional<RunOutput> record;
    std::string error; ///< empty iff record is set; names the offending key
    bool ok() const { return record.has_value(); }
};

/// Validating parse. Never returns a partial record: any missing or malformed
/// required key yields a rejection naming it, so callers can tell a corrupt
/// file from a failed run.
RunParse parse_run_output(const std::string& text);

/// Commit (git, "dirty+" prefix when the tree has local changes, "unknown"
/// outside a repository), current ISO-8601 timestamp, and hostname.
RunInfo capture_metadata(const std::string& repo_dir = ".");

/// Shortest decimal form that parses back to exactly the same double; always
/// contains a '.' or exponent so YAML keeps treating it as a real.
std::string format_double(double value);

} // namespace graphbench
