#ifndef TSPKIT_GRAPH_HPP
#define TSPKIT_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "tspkit/errors.hpp"

namespace tspkit {

using Vertex = int;
using EdgeId = int;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
    Vertex u;
    Vertex v;
    double cost;

    Vertex other(Vertex w) const { return w == u ? v : u; }
};

// Weighted undirected multigraph. Immutable after construction; edge ids
// are assigned in input order and used for all deterministic tie-breaking.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        for (std::size_t id = 0; id < edges_.size(); ++id) {
            const Edge& e = edges_[id];
            validate_edge(e, static_cast<long>(id));
        }
        build_adjacency();
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId id) const { return edges_[id]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Incident edge ids of v, in increasing id order.
    const std::vector<EdgeId>& incident(Vertex v) const { return adj_[v]; }

    bool connected() const {
        if (n_ == 0) return true;
        std::vector<char> seen(n_, 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (EdgeId id : adj_[v]) {
                Vertex w = edges_[id].other(v);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n_;
    }

    // Vertices of the component containing v.
    std::vector<Vertex> component_of(Vertex v) const {
        std::vector<char> seen(n_, 0);
        std::vector<Vertex> stack{v}, out;
        seen[v] = 1;
        while (!stack.empty()) {
            Vertex w = stack.back();
            stack.pop_back();
            out.push_back(w);
            for (EdgeId id : adj_[w]) {
                Vertex z = edges_[id].other(w);
                if (!seen[z]) {
                    seen[z] = 1;
                    stack.push_back(z);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void validate_edge(const Edge& e, long line) const {
        const std::string at = " (edge " + std::to_string(line) + ")";
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw IngestionError("vertex id out of range" + at);
        if (e.u == e.v) throw IngestionError("self-loop rejected" + at);
        if (!(e.cost >= 0.0) || !std::isfinite(e.cost))
            throw IngestionError("edge cost must be finite and nonnegative" + at);
    }

    void build_adjacency() {
        adj_.assign(n_, {});
        for (std::size_t id = 0; id < edges_.size(); ++id) {
            adj_[edges_[id].u].push_back(static_cast<EdgeId>(id));
            adj_[edges_[id].v].push_back(static_cast<EdgeId>(id));
        }
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> adj_;
};

// Throws with both offending components named when g is disconnected.
inline void require_connected(const Graph& g, const std::string& where) {
    if (g.connected()) return;
    std::vector<Vertex> comp = g.component_of(0);
    std::vector<char> in_comp(g.num_vertices(), 0);
    for (Vertex v : comp) in_comp[v] = 1;
    Vertex outside = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!in_comp[v]) {
            outside = v;
            break;
        }
    std::vector<Vertex> other = g.component_of(outside);
    auto render = [](const std::vector<Vertex>& vs) {
        std::string s = "{";
        for (std::size_t i = 0; i < vs.size() && i < 8; ++i)
            s += (i ? "," : "") + std::to_string(vs[i]);
        if (vs.size() > 8) s += ",...";
        return s + "}";
    };
    throw InfeasibleError(where + ": graph is disconnected; component " + render(comp) +
                          " is separated from component " + render(other));
}

inline Graph build_graph(int n, const std::vector<std::tuple<int, int, double>>& records) {
    std::vector<Edge> edges;
    edges.reserve(records.size());
    for (const auto& [u, v, c] : records) edges.push_back({u, v, c});
    return Graph(n, std::move(edges));
}

// Edge multiset over a parent graph: edge id -> multiplicity >= 1.
class EdgeMultiset {
public:
    EdgeMultiset() = default;

    void add(EdgeId id, int count = 1) {
        if (count <= 0) return;
        mult_[id] += count;
    }

    int multiplicity(EdgeId id) const {
        auto it = mult_.find(id);
        return it == mult_.end() ? 0 : it->second;
    }

    const std::map<EdgeId, int>& entries() const { return mult_; }
    bool empty() const { return mult_.empty(); }

    int total_count() const {
        int t = 0;
        for (const auto& [id, k] : mult_) t += k;
        return t;
    }

    double cost(const Graph& g) const {
        double c = 0.0;
        for (const auto& [id, k] : mult_) c += k * g.edge(id).cost;
        return c;
    }

    std::vector<EdgeId> support() const {
        std::vector<EdgeId> ids;
        ids.reserve(mult_.size());
        for (const auto& [id, k] : mult_) ids.push_back(id);
        return ids;
    }

private:
    std::map<EdgeId, int> mult_;
};

// Nonnegative edge vector with its objective value under the graph costs.
struct FractionalSolution {
    std::unordered_map<EdgeId, double> values;
    double objective = 0.0;

    double value(EdgeId id) const {
        auto it = values.find(id);
        return it == values.end() ? 0.0 : it->second;
    }

    std::vector<EdgeId> support() const {
        std::vector<EdgeId> ids;
        for (const auto& [id, x] : values)
            if (x > 0.0) ids.push_back(id);
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    static FractionalSolution from_values(const Graph& g,
                                          std::unordered_map<EdgeId, double> vals) {
        FractionalSolution s;
        s.values = std::move(vals);
        for (const auto& [id, x] : s.values) s.objective += g.edge(id).cost * x;
        return s;
    }
};

// Minimum spanning tree by Kruskal; ties broken by edge id (stable sort on
// equal costs keeps input order).
inline EdgeMultiset mst(const Graph& g) {
    require_connected(g, "mst");
    std::vector<EdgeId> order(g.num_edges());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        return g.edge(a).cost < g.edge(b).cost;
    });
    std::vector<Vertex> parent(g.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    EdgeMultiset tree;
    int taken = 0;
    for (EdgeId id : order) {
        Vertex a = find(g.edge(id).u), b = find(g.edge(id).v);
        if (a == b) continue;
        parent[a] = b;
        tree.add(id);
        if (++taken == g.num_vertices() - 1) break;
    }
    return tree;
}

struct ShortestPaths {
    std::vector<double> dist;        // kInf where unreachable
    std::vector<EdgeId> parent_edge; // -1 at source / unreachable
};

// Dijkstra restricted to the given edge subset (empty = all edges).
inline ShortestPaths shortest_paths(const Graph& g, Vertex source,
                                    const std::vector<EdgeId>* edge_subset = nullptr) {
    std::vector<char> allowed;
    if (edge_subset) {
        allowed.assign(g.num_edges(), 0);
        for (EdgeId id : *edge_subset) allowed[id] = 1;
    }
    ShortestPaths sp;
    sp.dist.assign(g.num_vertices(), kInf);
    sp.parent_edge.assign(g.num_vertices(), -1);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    sp.dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > sp.dist[v]) continue;
        for (EdgeId id : g.incident(v)) {
            if (edge_subset && !allowed[id]) continue;
            Vertex w = g.edge(id).other(v);
            double nd = d + g.edge(id).cost;
            if (nd < sp.dist[w]) {
                sp.dist[w] = nd;
                sp.parent_edge[w] = id;
                pq.push({nd, w});
            }
        }
    }
    return sp;
}

// Hierholzer's algorithm. Every vertex of the sub-multigraph must have even
// degree and its support must be connected on non-isolated vertices.
inline std::vector<Vertex> euler_tour(const Graph& g, const EdgeMultiset& es) {
    if (es.empty()) return {};

    // Expand the multiset into traversal slots.
    struct Arc {
        Vertex to;
        int slot;  // index into `used`
    };
    std::vector<std::vector<Arc>> arcs(g.num_vertices());
    std::vector<int> degree(g.num_vertices(), 0);
    int num_slots = 0;
    for (const auto& [id, k] : es.entries()) {
        const Edge& e = g.edge(id);
        for (int i = 0; i < k; ++i) {
            arcs[e.u].push_back({e.v, num_slots});
            arcs[e.v].push_back({e.u, num_slots});
            ++num_slots;
            degree[e.u]++;
            degree[e.v]++;
        }
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (degree[v] % 2 != 0)
            throw InfeasibleError("euler_tour: odd degree at vertex " + std::to_string(v));

    Vertex start = -1;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (degree[v] > 0) {
            start = v;
            break;
        }

    std::vector<char> used(num_slots, 0);
    std::vector<std::size_t> next_arc(g.num_vertices(), 0);
    std::vector<Vertex> stack{start}, walk;
    int traversed = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        std::size_t& i = next_arc[v];
        while (i < arcs[v].size() && used[arcs[v][i].slot]) ++i;
        if (i == arcs[v].size()) {
            walk.push_back(v);
            stack.pop_back();
        } else {
            used[arcs[v][i].slot] = 1;
            ++traversed;
            stack.push_back(arcs[v][i].to);
        }
    }
    if (traversed != num_slots)
        throw InfeasibleError(
            "euler_tour: edge support is disconnected (component of vertex " +
            std::to_string(start) + " misses " + std::to_string(num_slots - traversed) +
            " edges)");
    std::reverse(walk.begin(), walk.end());
    return walk;  // closed: walk.front() == walk.back()
}

}  // namespace tspkit

#endif
