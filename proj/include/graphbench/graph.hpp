#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphbench {

using NodeId = std::uint32_t;

/// Distance value returned by bfs() for unreachable nodes.
inline constexpr std::int32_t kUnreachable = -1;

/**
 * Immutable graph in CSR form. Undirected graphs store each edge in both
 * adjacency lists; directed graphs additionally keep a reverse adjacency so
 * backward traversals are O(in-degree).
 */
class Graph {
public:
    Graph() = default;

    /**
     * Builds a graph from an edge list. Self-loops are dropped and duplicate
     * edges merged; for undirected graphs (u,v) and (v,u) are the same edge.
     * Endpoints must be < node_count.
     */
    Graph(NodeId node_count, bool directed, std::vector<std::pair<NodeId, NodeId>> edges);

    NodeId node_count() const { return node_count_; }
    /// Unique edges after cleanup; an undirected edge counts once.
    std::uint64_t edge_count() const { return edge_count_; }
    bool directed() const { return directed_; }

    std::span<const NodeId> out_neighbors(NodeId u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId u) const {
        if (!directed_) return out_neighbors(u);
        return {rev_targets_.data() + rev_offsets_[u], rev_targets_.data() + rev_offsets_[u + 1]};
    }
    std::uint64_t out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
    std::uint64_t in_degree(NodeId u) const {
        if (!directed_) return out_degree(u);
        return rev_offsets_[u + 1] - rev_offsets_[u];
    }

    bool operator==(const Graph&) const = default;

private:
    NodeId node_count_ = 0;
    bool directed_ = false;
    std::uint64_t edge_count_ = 0;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<std::uint64_t> rev_offsets_;
    std::vector<NodeId> rev_targets_;
};

/**
 * Reads whitespace-separated edge pairs. Lines whose first non-space character
 * is '%' or '#' are comments; tokens after the two endpoint ids are ignored
 * (public datasets carry weight/timestamp columns). Ids may be 0- or 1-based:
 * when the smallest id is 1 and 0 never appears, all ids are shifted down by
 * one. Throws std::runtime_error with the line number on malformed input and
 * when no edges remain.
 */
Graph load_edge_list(std::istream& in, bool directed);
Graph load_edge_list_file(const std::string& path, bool directed);

/// Inverse of load_edge_list for graphs without trailing isolated nodes.
/// Emits 0-based ids, one edge per line, undirected edges once.
std::string write_edge_list(const Graph& g);

/// Uniform simple undirected graph with exactly m edges; deterministic per seed.
Graph generate_gnm(NodeId n, std::uint64_t m, std::uint64_t seed);

enum class Direction { forward, backward };

/// Hop distances from source; kUnreachable where no path exists.
/// Direction::backward follows edges in reverse (identical for undirected graphs).
std::vector<std::int32_t> bfs(const Graph& g, NodeId source, Direction dir = Direction::forward);

struct DiameterEstimate {
    std::int32_t lower = 0;
    std::int32_t upper = 0;
    /// Upper bound on the number of nodes on any shortest path (hops + 1).
    std::int32_t vertex_diameter_upper = 1;
    bool exact = false;
};

/**
 * Diameter bounds for a connected graph. Exhaustive BFS when node_count <=
 * 1000 (lower == upper); otherwise a seeded double sweep: lower is the second
 * sweep's eccentricity, upper twice the smallest eccentricity observed (for
 * directed graphs the sum of the sweep node's in- and out-eccentricities).
 */
DiameterEstimate estimate_diameter(const Graph& g, std::uint64_t seed);

struct ComponentExtraction {
    Graph graph;
    /// original_ids[v] is the input-graph id of extracted node v (ascending).
    std::vector<NodeId> original_ids;
    NodeId original_node_count = 0;
    std::uint64_t original_edge_count = 0;
};

/// Largest connected component (largest strongly connected component when
/// directed). Ties break toward the component containing the smallest id.
ComponentExtraction largest_component(const Graph& g);

} // namespace graphbench
