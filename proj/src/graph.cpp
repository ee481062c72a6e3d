#include "graphbench/graph.hpp"
#include "graphbench/random.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace graphbench {

Graph::Graph(NodeId node_count, bool directed, std::vector<std::pair<NodeId, NodeId>> edges)
    : node_count_(node_count), directed_(directed) {
    for (auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (!directed && u > v) std::swap(u, v);
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edge_count_ = edges.size();

    std::vector<std::uint64_t> deg(node_count + 1, 0);
    for (const auto& [u, v] : edges) {
        ++deg[u];
        if (!directed) ++deg[v];
    }
    offsets_.assign(node_count + 1, 0);
    for (NodeId i = 0; i < node_count; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
    targets_.resize(offsets_[node_count]);
    std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        targets_[fill[u]++] = v;
        if (!directed) targets_[fill[v]++] = u;
    }
    if (directed) {
        std::vector<std::uint64_t> rdeg(node_count + 1, 0);
        for (const auto& [u, v] : edges) ++rdeg[v];
        rev_offsets_.assign(node_count + 1, 0);
        for (NodeId i = 0; i < node_count; ++i) rev_offsets_[i + 1] = rev_offsets_[i] + rdeg[i];
        rev_targets_.resize(rev_offsets_[node_count]);
        std::vector<std::uint64_t> rfill(rev_offsets_.begin(), rev_offsets_.end() - 1);
        for (const auto& [u, v] : edges) rev_targets_[rfill[v]++] = u;
    }
    for (NodeId u = 0; u < node_count; ++u) {
        auto nb = out_neighbors(u);
        if (!std::is_sorted(nb.begin(), nb.end()))
            std::sort(targets_.begin() + offsets_[u], targets_.begin() + offsets_[u + 1]);
    }
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == '\r') continue;
        return ch == '%' || ch == '#';
    }
    return true;
}

std::uint64_t parse_node_id(const std::string& token, std::size_t line_no) {
    std::uint64_t value = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        std::ostringstream msg;
        msg << "edge list line " << line_no << ": expected a node id, got '" << token << "'";
        throw std::runtime_error(msg.str());
    }
    if (value > 0xfffffffeULL) {
        std::ostringstream msg;
        msg << "edge list line " << line_no << ": node id " << value << " too large";
        throw std::runtime_error(msg.str());
    }
    return value;
}

} // namespace

Graph load_edge_list(std::istream& in, bool directed) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t min_id = UINT64_MAX, max_id = 0;
    bool saw_zero = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::string tu, tv;
        if (!(ls >> tu >> tv)) {
            std::ostringstream msg;
            msg << "edge list line " << line_no << ": expected two node ids";
            throw std::runtime_error(msg.str());
        }
        const std::uint64_t u = parse_node_id(tu, line_no);
        const std::uint64_t v = parse_node_id(tv, line_no);
        min_id = std::min({min_id, u, v});
        max_id = std::max({max_id, u, v});
        saw_zero = saw_zero || u == 0 || v == 0;
        raw.emplace_back(u, v);
    }
    if (raw.empty()) throw std::runtime_error("edge list contains no edges");

    const std::uint64_t shift = (min_id == 1 && !saw_zero) ? 1 : 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    for (const auto& [u, v] : raw)
        edges.emplace_back(static_cast<NodeId>(u - shift), static_cast<NodeId>(v - shift));
    return Graph(static_cast<NodeId>(max_id - shift + 1), directed, std::move(edges));
}

Graph load_edge_list_file(const std::string& path, bool directed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return load_edge_list(in, directed);
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "% " << g.node_count() << " nodes, " << g.edge_count()
        << (g.directed() ? " arcs\n" : " edges\n");
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.out_neighbors(u))
            if (g.directed() || u < v) out << u << ' ' << v << '\n';
    return out.str();
}

namespace {

// Linear index k in [0, n(n-1)/2) -> unordered pair (u, v), u < v.
// Row u covers indices [u*n - u*(u+1)/2, ...) of size n-1-u.
std::pair<NodeId, NodeId> decode_pair(std::uint64_t k, std::uint64_t n) {
    std::uint64_t u = static_cast<std::uint64_t>(
        n - 0.5 - std::sqrt((n - 0.5) * (n - 0.5) - 2.0 * static_cast<double>(k)));
    auto row_start = [n](std::uint64_t r) { return r * n - r * (r + 1) / 2; };
    while (u > 0 && row_start(u) > k) --u;
    while (row_start(u + 1) <= k) ++u;
    const std::uint64_t v = u + 1 + (k - row_start(u));
    return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

} // namespace

Graph generate_gnm(NodeId n, std::uint64_t m, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("generate_gnm: need at least one node");
    const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m > max_edges) throw std::invalid_argument("generate_gnm: more edges than node pairs");

    // Floyd's subset sampling: uniform over all m-subsets of pair indices.
    Rng rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(m * 2);
    for (std::uint64_t j = max_edges - m; j < max_edges; ++j) {
        const std::uint64_t t = rng.bounded(j + 1);
        chosen.insert(chosen.count(t) ? j : t);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(m);
    for (std::uint64_t k : chosen) edges.push_back(decode_pair(k, n));
    return Graph(n, false, std::move(edges));
}

std::vector<std::int32_t> bfs(const Graph& g, NodeId source, Direction dir) {
    if (source >= g.node_count()) throw std::out_of_range("bfs: source out of range");
    std::vector<std::int32_t> dist(g.node_count(), kUnreachable);
    std::vector<NodeId> queue;
    queue.reserve(g.node_count());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const auto nb = dir == Direction::forward ? g.out_neighbors(u) : g.in_neighbors(u);
        for (NodeId v : nb) {
            if (dist[v] != kUnreachable) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

namespace {

std::int32_t eccentricity(const std::vector<std::int32_t>& dist) {
    std::int32_t ecc = 0;
    for (std::int32_t d : dist) {
        if (d == kUnreachable) throw std::runtime_error("estimate_diameter: graph is not connected");
        ecc = std::max(ecc, d);
    }
    return ecc;
}

} // namespace

DiameterEstimate estimate_diameter(const Graph& g, std::uint64_t seed) {
    const NodeId n = g.node_count();
    if (n == 0) throw std::invalid_argument("estimate_diameter: empty graph");

    DiameterEstimate est;
    if (n <= 1000) {
        std::int32_t diam = 0;
        for (NodeId s = 0; s < n; ++s) diam = std::max(diam, eccentricity(bfs(g, s)));
        est.lower = est.upper = diam;
        est.exact = true;
    } else {
        Rng rng(seed);
        const NodeId start = static_cast<NodeId>(rng.bounded(n));
        const auto d1 = bfs(g, start);
        const std::int32_t ecc_start = eccentricity(d1);
        NodeId farthest = start;
        for (NodeId v = 0; v < n; ++v)
            if (d1[v] > d1[farthest]) farthest = v;
        const std::int32_t ecc_far = eccentricity(bfs(g, farthest));
        if (g.directed()) {
            const std::int32_t ecc_start_in = eccentricity(bfs(g, start, Direction::backward));
            const std::int32_t ecc_far_in = eccentricity(bfs(g, farthest, Direction::backward));
            est.lower = std::max(ecc_far, ecc_far_in);
            est.upper = std::min(ecc_start + ecc_start_in, ecc_far + ecc_far_in);
        } else {
            est.lower = ecc_far;
            est.upper = 2 * std::min(ecc_start, ecc_far);
        }
        est.exact = false;
    }
    est.vertex_diameter_upper = est.upper + 1;
    return est;
}

namespace {

// Iterative Kosaraju; forward DFS finish order, then reverse-graph sweeps.
std::vector<NodeId> scc_labels(const Graph& g, NodeId& component_count) {
    const NodeId n = g.node_count();
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<bool> seen(n, false);
    std::vector<std::pair<NodeId, std::size_t>> stack;
    for (NodeId root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            const auto nb = g.out_neighbors(u);
            if (idx < nb.size()) {
                const NodeId v = nb[idx++];
                if (!seen[v]) {
                    seen[v] = true;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::vector<NodeId> label(n, n);
    component_count = 0;
    std::vector<NodeId> queue;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (label[*it] != n) continue;
        const NodeId c = component_count++;
        label[*it] = c;
        queue.assign(1, *it);
        while (!queue.empty()) {
            const NodeId u = queue.back();
            queue.pop_back();
            for (NodeId v : g.in_neighbors(u)) {
                if (label[v] != n) continue;
                label[v] = c;
                queue.push_back(v);
            }
        }
    }
    return label;
}

std::vector<NodeId> undirected_labels(const Graph& g, NodeId& component_count) {
    const NodeId n = g.node_count();
    std::vector<NodeId> label(n, n);
    component_count = 0;
    std::vector<NodeId> queue;
    for (NodeId root = 0; root < n; ++root) {
        if (label[root] != n) continue;
        const NodeId c = component_count++;
        label[root] = c;
        queue.assign(1, root);
        while (!queue.empty()) {
            const NodeId u = queue.back();
            queue.pop_back();
            for (NodeId v : g.out_neighbors(u)) {
                if (label[v] != n) continue;
                label[v] = c;
                queue.push_back(v);
            }
        }
    }
    return label;
}

} // namespace

ComponentExtraction largest_component(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) throw std::invalid_argument("largest_component: empty graph");
    NodeId components = 0;
    const auto label =
        g.directed() ? scc_labels(g, components) : undirected_labels(g, components);
    std::vector<std::uint64_t> size(components, 0);
    for (NodeId v = 0; v < n; ++v) ++size[label[v]];
    // Labels are assigned in discovery order, so max_element's first-winner
    // tie-break picks the component containing the smallest node id.
    const NodeId best = static_cast<NodeId>(
        std::max_element(size.begin(), size.end()) - size.begin());

    ComponentExtraction result;
    result.original_node_count = n;
    result.original_edge_count = g.edge_count();
    std::vector<NodeId> to_new(n, n);
    for (NodeId v = 0; v < n; ++v) {
        if (label[v] != best) continue;
        to_new[v] = static_cast<NodeId>(result.original_ids.size());
        result.original_ids.push_back(v);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v : result.original_ids)
        for (NodeId w : g.out_neighbors(v))
            if (to_new[w] != n && (g.directed() || v < w)) edges.emplace_back(to_new[v], to_new[w]);
    result.graph = Graph(static_cast<NodeId>(result.original_ids.size()), g.directed(), std::move(edges));
    return result;
}

} // namespace graphbench
