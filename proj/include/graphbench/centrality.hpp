#pragma once

#include "graphbench/graph.hpp"
#include "graphbench/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace graphbench {

/**
 * Betweenness scores normalized by n(n-1), i.e. the probability that a
 * uniformly random shortest path between a uniform ordered node pair passes
 * through v as an interior node.
 */
struct CentralityEstimate {
    std::vector<double> scores;
    std::uint64_t samples_used = 0; ///< 0 for exact algorithms
    double epsilon = 0.0;           ///< 0 for exact algorithms
    double delta = 0.0;
    std::uint64_t omega = 0;        ///< sample cap (adaptive) or budget (fixed)
    std::string algorithm;
};

/// Exact betweenness via single-source dependency accumulation. Needs >= 3 nodes.
CentralityEstimate brandes_exact(const Graph& g);

/// Exact betweenness by explicit enumeration of every shortest path.
/// Only intended as a cross-check; refuses graphs with more than 12 nodes.
CentralityEstimate brute_force_betweenness(const Graph& g);

/**
 * Draws uniformly among all shortest s-t paths.
 *
 * reference: full forward BFS with path counts, then a backward walk from t
 * picking each predecessor proportionally to its count.
 * bidirectional: balanced bidirectional BFS that expands the side whose
 * frontier has fewer outgoing edges, then stitches the two halves at the
 * meeting level. Same output distribution, much less work on large graphs.
 */
class PathSampler {
public:
    enum class Mode { reference, bidirectional };

    explicit PathSampler(const Graph& g, Mode mode = Mode::bidirectional);

    /// Node sequence from s to t inclusive. Throws if s == t or t is unreachable.
    std::vector<NodeId> sample(NodeId s, NodeId t, Rng& rng);

private:
    std::vector<NodeId> sample_reference(NodeId s, NodeId t, Rng& rng);
    std::vector<NodeId> sample_bidirectional(NodeId s, NodeId t, Rng& rng);
    void reset_scratch();

    const Graph& g_;
    Mode mode_;
    // scratch reused across draws; reset via the touched list, not O(n) clears
    std::vector<std::int32_t> dist_f_, dist_b_;
    std::vector<double> sigma_f_, sigma_b_;
    std::vector<NodeId> touched_;
    std::vector<NodeId> frontier_f_, frontier_b_, next_;
};

/**
 * Two-sided deviation bound driving the adaptive stopping check:
 *   sqrt(2 b (1-b) ln(3/delta_v) / tau) + 3 ln(3/delta_v) / tau.
 * Non-increasing in tau for fixed b.
 */
double deviation_bound(double b, double delta_v, std::uint64_t tau);

struct KadabraParams {
    double epsilon = 0.01;
    double delta = 0.1;
    std::uint32_t c = 10;   ///< samples drawn between stopping checks
    std::uint64_t seed = 0;
    PathSampler::Mode sampler = PathSampler::Mode::bidirectional;
};

/// Sample cap omega = ceil(ln(4n/delta) / (2 epsilon^2)).
std::uint64_t kadabra_sample_cap(NodeId n, double epsilon, double delta);

/**
 * Adaptive-sampling betweenness. Draws c shortest paths between uniform node
 * pairs per round, crediting interior nodes, and stops as soon as every
 * node's deviation bound (at per-node failure budget delta/(4n)) drops below
 * epsilon, or after ceil(omega/c) rounds. With probability at least 1-delta
 * all absolute score errors are below epsilon. Requires a connected graph
 * (strongly connected when directed).
 */
CentralityEstimate kadabra(const Graph& g, const KadabraParams& params);

/// Fixed sample budget r = ceil((0.5/eps^2) (floor(log2(vd-2)) + 1 + ln(1/delta)));
/// the log term is 0 when vd <= 3.
std::uint64_t rk_sample_budget(std::int32_t vertex_diameter_upper, double epsilon, double delta);

/// Fixed-budget sampling with the budget derived from a diameter estimate.
CentralityEstimate rk(const Graph& g, double epsilon, double delta, std::uint64_t seed);

/// Plain fixed-count sampling (no adaptivity); building block for rk and for
/// estimator-bias tests.
CentralityEstimate sample_betweenness_fixed(const Graph& g, std::uint64_t samples,
                                            std::uint64_t seed,
                                            PathSampler::Mode mode = PathSampler::Mode::bidirectional);

} // namespace graphbench
