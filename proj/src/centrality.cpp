#include "graphbench/centrality.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace graphbench {

namespace {

void require_connected(const Graph& g, const char* who) {
    const auto fwd = bfs(g, 0);
    bool ok = std::count(fwd.begin(), fwd.end(), kUnreachable) == 0;
    if (ok && g.directed()) {
        const auto bwd = bfs(g, 0, Direction::backward);
        ok = std::count(bwd.begin(), bwd.end(), kUnreachable) == 0;
    }
    if (!ok)
        throw std::runtime_error(std::string(who) +
                                 ": graph must be connected; extract the largest component first");
}

} // namespace

CentralityEstimate brandes_exact(const Graph& g) {
    const NodeId n = g.node_count();
    if (n < 3) throw std::invalid_argument("brandes_exact: need at least 3 nodes");

    std::vector<double> centrality(n, 0.0);
    std::vector<std::int32_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order;
    order.reserve(n);

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId u = order[head];
            for (NodeId v : g.out_neighbors(u)) {
                if (dist[v] == kUnreachable) {
                    dist[v] = dist[u] + 1;
                    order.push_back(v);
                }
                if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
            }
        }
        // dependency accumulation in reverse BFS order
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const NodeId w = *it;
            for (NodeId p : g.in_neighbors(w))
                if (dist[p] != kUnreachable && dist[p] + 1 == dist[w])
                    delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
            if (w != s) centrality[w] += delta[w];
        }
    }

    const double norm = static_cast<double>(n) * (n - 1);
    for (double& c : centrality) c /= norm;
    CentralityEstimate est;
    est.scores = std::move(centrality);
    est.algorithm = "brandes";
    return est;
}

CentralityEstimate brute_force_betweenness(const Graph& g) {
    const NodeId n = g.node_count();
    if (n > 12) throw std::invalid_argument("brute_force_betweenness: limited to 12 nodes");
    if (n < 3) throw std::invalid_argument("brute_force_betweenness: need at least 3 nodes");

    std::vector<double> centrality(n, 0.0);
    std::vector<std::uint64_t> through(n);
    for (NodeId s = 0; s < n; ++s) {
        const auto dist = bfs(g, s);
        for (NodeId t = 0; t < n; ++t) {
            if (t == s || dist[t] == kUnreachable) continue;
            std::fill(through.begin(), through.end(), 0);
            std::uint64_t paths = 0;
            // depth-first enumeration of every shortest path, walking back from t
            std::vector<NodeId> partial{t};
            std::vector<std::size_t> branch{0};
            while (!partial.empty()) {
                const NodeId w = partial.back();
                if (w == s) {
                    ++paths;
                    for (std::size_t i = 1; i + 1 < partial.size(); ++i) ++through[partial[i]];
                    partial.pop_back();
                    branch.pop_back();
                    continue;
                }
                const auto preds = g.in_neighbors(w);
                std::size_t& next = branch.back();
                bool descended = false;
                while (next < preds.size()) {
                    const NodeId p = preds[next++];
                    if (dist[p] != kUnreachable && dist[p] + 1 == dist[w]) {
                        partial.push_back(p);
                        branch.push_back(0);
                        descended = true;
                        break;
                    }
                }
                if (!descended) {
                    partial.pop_back();
                    branch.pop_back();
                }
            }
            for (NodeId v = 0; v < n; ++v)
                if (through[v] > 0)
                    centrality[v] += static_cast<double>(through[v]) / static_cast<double>(paths);
        }
    }
    const double norm = static_cast<double>(n) * (n - 1);
    for (double& c : centrality) c /= norm;
    CentralityEstimate est;
    est.scores = std::move(centrality);
    est.algorithm = "brute_force";
    return est;
}

PathSampler::PathSampler(const Graph& g, Mode mode)
    : g_(g), mode_(mode),
      dist_f_(g.node_count(), kUnreachable), dist_b_(g.node_count(), kUnreachable),
      sigma_f_(g.node_count(), 0.0), sigma_b_(g.node_count(), 0.0) {}

void PathSampler::reset_scratch() {
    for (NodeId v : touched_) {
        dist_f_[v] = dist_b_[v] = kUnreachable;
        sigma_f_[v] = sigma_b_[v] = 0.0;
    }
    touched_.clear();
    frontier_f_.clear();
    frontier_b_.clear();
}

std::vector<NodeId> PathSampler::sample(NodeId s, NodeId t, Rng& rng) {
    if (s >= g_.node_count() || t >= g_.node_count())
        throw std::out_of_range("PathSampler: node out of range");
    if (s == t) throw std::invalid_argument("PathSampler: endpoints must differ");
    return mode_ == Mode::reference ? sample_reference(s, t, rng) : sample_bidirectional(s, t, rng);
}

std::vector<NodeId> PathSampler::sample_reference(NodeId s, NodeId t, Rng& rng) {
    reset_scratch();
    dist_f_[s] = 0;
    sigma_f_[s] = 1.0;
    touched_.push_back(s);
    frontier_f_.assign(1, s);
    bool found = false;
    while (!frontier_f_.empty() && !found) {
        next_.clear();
        for (NodeId u : frontier_f_) {
            for (NodeId v : g_.out_neighbors(u)) {
                if (dist_f_[v] == kUnreachable) {
                    dist_f_[v] = dist_f_[u] + 1;
                    touched_.push_back(v);
                    next_.push_back(v);
                }
                if (dist_f_[v] == dist_f_[u] + 1) sigma_f_[v] += sigma_f_[u];
            }
        }
        found = dist_f_[t] != kUnreachable;
        frontier_f_.swap(next_);
    }
    if (dist_f_[t] == kUnreachable)
        throw std::runtime_error("PathSampler: target not reachable from source");

    // backward walk; predecessor p chosen with probability sigma(p)/sigma(w)
    std::vector<NodeId> path{t};
    NodeId w = t;
    while (w != s) {
        double pick = rng.uniform() * sigma_f_[w];
        NodeId chosen = s;
        for (NodeId p : g_.in_neighbors(w)) {
            if (dist_f_[p] == kUnreachable || dist_f_[p] + 1 != dist_f_[w]) continue;
            if (pick < sigma_f_[p]) {
                chosen = p;
                break;
            }
            pick -= sigma_f_[p];
        }
        path.push_back(chosen);
        w = chosen;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<NodeId> PathSampler::sample_bidirectional(NodeId s, NodeId t, Rng& rng) {
    reset_scratch();
    dist_f_[s] = 0;
    sigma_f_[s] = 1.0;
    dist_b_[t] = 0;
    sigma_b_[t] = 1.0;
    touched_.push_back(s);
    touched_.push_back(t);
    frontier_f_.assign(1, s);
    frontier_b_.assign(1, t);
    std::int32_t level_f = 0, level_b = 0;
    std::int32_t d = -1;

    while (d < 0) {
        std::uint64_t cost_f = 0, cost_b = 0;
        for (NodeId u : frontier_f_) cost_f += g_.out_degree(u);
        for (NodeId u : frontier_b_) cost_b += g_.in_degree(u);
        const bool forward = cost_f <= cost_b;
        next_.clear();
        if (forward) {
            ++level_f;
            for (NodeId u : frontier_f_) {
                for (NodeId v : g_.out_neighbors(u)) {
                    if (dist_f_[v] == kUnreachable) {
                        dist_f_[v] = level_f;
                        if (dist_b_[v] == kUnreachable) touched_.push_back(v);
                        next_.push_back(v);
                    }
                    if (dist_f_[v] == level_f) sigma_f_[v] += sigma_f_[u];
                }
            }
            frontier_f_.swap(next_);
            if (frontier_f_.empty())
                throw std::runtime_error("PathSampler: target not reachable from source");
            for (NodeId v : frontier_f_)
                if (dist_b_[v] != kUnreachable)
                    d = d < 0 ? level_f + dist_b_[v] : std::min(d, level_f + dist_b_[v]);
        } else {
            ++level_b;
            for (NodeId u : frontier_b_) {
                for (NodeId v : g_.in_neighbors(u)) {
                    if (dist_b_[v] == kUnreachable) {
                        dist_b_[v] = level_b;
                        if (dist_f_[v] == kUnreachable) touched_.push_back(v);
                        next_.push_back(v);
                    }
                    if (dist_b_[v] == level_b) sigma_b_[v] += sigma_b_[u];
                }
            }
            frontier_b_.swap(next_);
            if (frontier_b_.empty())
                throw std::runtime_error("PathSampler: target not reachable from source");
            for (NodeId v : frontier_b_)
                if (dist_f_[v] != kUnreachable)
                    d = d < 0 ? level_b + dist_f_[v] : std::min(d, level_b + dist_f_[v]);
        }
    }

    // Every shortest path crosses the completed forward depth at exactly one
    // node; those nodes are all in the current forward frontier with exact
    // counts on both sides.
    double total = 0.0;
    for (NodeId v : frontier_f_)
        if (dist_b_[v] != kUnreachable && dist_f_[v] + dist_b_[v] == d)
            total += sigma_f_[v] * sigma_b_[v];
    assert(total > 0.0);
    double pick = rng.uniform() * total;
    NodeId meet = frontier_f_.front();
    for (NodeId v : frontier_f_) {
        if (dist_b_[v] == kUnreachable || dist_f_[v] + dist_b_[v] != d) continue;
        const double w = sigma_f_[v] * sigma_b_[v];
        if (pick < w) {
            meet = v;
            break;
        }
        pick -= w;
    }

    std::vector<NodeId> path;
    // meet -> s through the forward search
    NodeId w = meet;
    while (w != s) {
        path.push_back(w);
        double p2 = rng.uniform() * sigma_f_[w];
        NodeId chosen = s;
        for (NodeId p : g_.in_neighbors(w)) {
            if (dist_f_[p] == kUnreachable || dist_f_[p] + 1 != dist_f_[w]) continue;
            if (p2 < sigma_f_[p]) {
                chosen = p;
                break;
            }
            p2 -= sigma_f_[p];
        }
        w = chosen;
    }
    path.push_back(s);
    std::reverse(path.begin(), path.end());
    // meet -> t through the backward search
    w = meet;
    while (w != t) {
        double p2 = rng.uniform() * sigma_b_[w];
        NodeId chosen = t;
        for (NodeId q : g_.out_neighbors(w)) {
            if (dist_b_[q] == kUnreachable || dist_b_[q] + 1 != dist_b_[w]) continue;
            if (p2 < sigma_b_[q]) {
                chosen = q;
                break;
            }
            p2 -= sigma_b_[q];
        }
        path.push_back(chosen);
        w = chosen;
    }
    return path;
}

double deviation_bound(double b, double delta_v, std::uint64_t tau) {
    const double log_term = std::log(3.0 / delta_v);
    const double t = static_cast<double>(tau);
    return std::sqrt(2.0 * b * (1.0 - b) * log_term / t) + 3.0 * log_term / t;
}

std::uint64_t kadabra_sample_cap(NodeId n, double epsilon, double delta) {
    return static_cast<std::uint64_t>(
        std::ceil(std::log(4.0 * n / delta) / (2.0 * epsilon * epsilon)));
}

namespace {

struct SampleLoop {
    const Graph& g;
    PathSampler sampler;
    Rng rng;
    std::vector<std::uint64_t> hits;
    std::uint64_t tau = 0;

    SampleLoop(const Graph& graph, std::uint64_t seed, PathSampler::Mode mode)
        : g(graph), sampler(graph, mode), rng(seed), hits(graph.node_count(), 0) {}

    void draw_one() {
        const NodeId n = g.node_count();
        const NodeId s = static_cast<NodeId>(rng.bounded(n));
        NodeId t = static_cast<NodeId>(rng.bounded(n - 1));
        if (t >= s) ++t;
        const auto path = sampler.sample(s, t, rng);
        for (std::size_t i = 1; i + 1 < path.size(); ++i) ++hits[path[i]];
        ++tau;
    }

    CentralityEstimate finish(const char* algorithm) const {
        CentralityEstimate est;
        est.scores.resize(hits.size());
        for (std::size_t v = 0; v < hits.size(); ++v)
            est.scores[v] = static_cast<double>(hits[v]) / static_cast<double>(tau);
        est.samples_used = tau;
        est.algorithm = algorithm;
        return est;
    }
};

} // namespace

CentralityEstimate kadabra(const Graph& g, const KadabraParams& params) {
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
        throw std::invalid_argument("kadabra: epsilon must be in (0,1)");
    if (!(params.delta > 0.0 && params.delta < 1.0))
        throw std::invalid_argument("kadabra: delta must be in (0,1)");
    if (params.c == 0) throw std::invalid_argument("kadabra: c must be positive");
    if (g.node_count() < 2) throw std::invalid_argument("kadabra: need at least 2 nodes");
    require_connected(g, "kadabra");

    const NodeId n = g.node_count();
    const std::uint64_t omega = kadabra_sample_cap(n, params.epsilon, params.delta);
    const double delta_v = params.delta / (4.0 * n);

    SampleLoop loop(g, params.seed, params.sampler);
    while (loop.tau < omega) {
        if (loop.tau > 0) {
            double worst = 0.0;
            for (NodeId v = 0; v < n; ++v) {
                const double b = static_cast<double>(loop.hits[v]) / static_cast<double>(loop.tau);
                worst = std::max(worst, deviation_bound(b, delta_v, loop.tau));
            }
            if (worst < params.epsilon) break; // estimate already good enough
        }
        for (std::uint32_t i = 0; i < params.c; ++i) loop.draw_one();
    }

    CentralityEstimate est = loop.finish("kadabra");
    est.epsilon = params.epsilon;
    est.delta = params.delta;
    est.omega = omega;
    return est;
}

std::uint64_t rk_sample_budget(std::int32_t vertex_diameter_upper, double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("rk: epsilon must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("rk: delta must be in (0,1)");
    const double log2_term =
        vertex_diameter_upper <= 3
            ? 0.0
            : static_cast<double>(std::bit_width(
                  static_cast<std::uint64_t>(vertex_diameter_upper - 2)) - 1);
    return static_cast<std::uint64_t>(
        std::ceil(0.5 / (epsilon * epsilon) * (log2_term + 1.0 + std::log(1.0 / delta))));
}

CentralityEstimate sample_betweenness_fixed(const Graph& g, std::uint64_t samples,
                                            std::uint64_t seed, PathSampler::Mode mode) {
    if (samples == 0) throw std::invalid_argument("sample_betweenness_fixed: need samples > 0");
    if (g.node_count() < 2)
        throw std::invalid_argument("sample_betweenness_fixed: need at least 2 nodes");
    require_connected(g, "sample_betweenness_fixed");
    SampleLoop loop(g, seed, mode);
    while (loop.tau < samples) loop.draw_one();
    return loop.finish("fixed");
}

CentralityEstimate rk(const Graph& g, double epsilon, double delta, std::uint64_t seed) {
    if (g.node_count() < 2) throw std::invalid_argument("rk: need at least 2 nodes");
    require_connected(g, "rk");
    const auto diameter = estimate_diameter(g, seed);
    const std::uint64_t budget = rk_sample_budget(diameter.vertex_diameter_upper, epsilon, delta);
    CentralityEstimate est = sample_betweenness_fixed(g, budget, seed);
    est.algorithm = "rk";
    est.epsilon = epsilon;
    est.delta = delta;
    est.omega = budget;
    return est;
}

} // namespace graphbench
