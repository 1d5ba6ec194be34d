#ifndef TSPKIT_MINCUT_HPP
#define TSPKIT_MINCUT_HPP

#include <algorithm>
#include <vector>

#include "tspkit/graph.hpp"

namespace tspkit {

// A nonnegative re-weighting of the edges of a base graph (e.g. an LP
// solution x playing the role of capacities).
struct WeightedView {
    const Graph* base;
    std::vector<double> weights;  // indexed by edge id

    static WeightedView uniform(const Graph& g, double w = 1.0) {
        return {&g, std::vector<double>(g.num_edges(), w)};
    }

    static WeightedView from_costs(const Graph& g) {
        WeightedView wv{&g, {}};
        wv.weights.reserve(g.num_edges());
        for (const Edge& e : g.edges()) wv.weights.push_back(e.cost);
        return wv;
    }

    static WeightedView from_solution(const Graph& g, const FractionalSolution& x) {
        WeightedView wv{&g, std::vector<double>(g.num_edges(), 0.0)};
        for (const auto& [id, v] : x.values) wv.weights[id] = v;
        return wv;
    }
};

struct MinCut {
    double value = kInf;
    std::vector<Vertex> side;  // one side of the cut, sorted
};

namespace detail {

// Stoer-Wagner on the subgraph induced by `verts` (original vertex ids).
// Ties in the max-adjacency selection break toward the smallest original id,
// so the result is deterministic given the vertex order.
inline MinCut stoer_wagner(const WeightedView& wv, const std::vector<Vertex>& verts) {
    const int k = static_cast<int>(verts.size());
    std::vector<int> index(wv.base->num_vertices(), -1);
    for (int i = 0; i < k; ++i) index[verts[i]] = i;

    std::vector<std::vector<double>> w(k, std::vector<double>(k, 0.0));
    for (EdgeId id = 0; id < wv.base->num_edges(); ++id) {
        const Edge& e = wv.base->edge(id);
        int a = index[e.u], b = index[e.v];
        if (a < 0 || b < 0) continue;
        w[a][b] += wv.weights[id];
        w[b][a] += wv.weights[id];
    }

    std::vector<std::vector<Vertex>> group(k);
    for (int i = 0; i < k; ++i) group[i] = {verts[i]};
    std::vector<char> merged(k, 0);

    MinCut best;
    for (int phase = 0; phase < k - 1; ++phase) {
        std::vector<double> adj(k, 0.0);
        std::vector<char> added(k, 0);
        int prev = -1, last = -1;
        for (int step = 0; step < k - phase; ++step) {
            int sel = -1;
            for (int i = 0; i < k; ++i) {
                if (merged[i] || added[i]) continue;
                if (sel == -1 || adj[i] > adj[sel]) sel = i;
            }
            if (sel < 0) break;  // unreachable: k - phase unmarked vertices remain
            added[sel] = 1;
            prev = last;
            last = sel;
            for (int i = 0; i < k; ++i)
                if (!merged[i] && !added[i]) adj[i] += w[sel][i];
        }
        if (adj[last] < best.value) {
            best.value = adj[last];
            best.side = group[last];
        }
        // merge `last` into `prev`
        merged[last] = 1;
        group[prev].insert(group[prev].end(), group[last].begin(), group[last].end());
        for (int i = 0; i < k; ++i) {
            w[prev][i] += w[last][i];
            w[i][prev] = w[prev][i];
        }
    }
    std::sort(best.side.begin(), best.side.end());
    return best;
}

}  // namespace detail

// Exact global minimum cut (Stoer-Wagner). Returns the cut value and one
// side; a zero-weight disconnection yields value 0 with a witnessing side.
inline MinCut global_min_cut(const WeightedView& wv) {
    if (wv.base->num_vertices() < 2)
        throw InfeasibleError("global_min_cut needs n >= 2");
    std::vector<Vertex> verts(wv.base->num_vertices());
    std::iota(verts.begin(), verts.end(), 0);
    return detail::stoer_wagner(wv, verts);
}

// Per-edge strengths: s_e is the largest k such that some vertex-induced
// k-connected subgraph contains both endpoints of e.
struct StrengthMap {
    std::vector<double> strength;  // indexed by edge id

    double of(EdgeId id) const { return strength[id]; }
};

// Exact strengths by recursive min-cut decomposition: take the global min
// cut lambda of the current vertex set, raise every inside edge to at least
// lambda, then recurse on the two vertex-induced sides. Any k-strong
// component with k > lambda cannot cross a cut of value lambda, so the
// recursion visits it intact.
inline StrengthMap exact_strengths(const WeightedView& wv) {
    const Graph& g = *wv.base;
    if (!g.connected()) throw InfeasibleError("exact_strengths: graph is disconnected");
    StrengthMap sm;
    sm.strength.assign(g.num_edges(), 0.0);
    if (g.num_vertices() < 2) return sm;

    std::vector<Vertex> all(g.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<Vertex>> stack{all};
    std::vector<char> inside(g.num_vertices(), 0);
    while (!stack.empty()) {
        std::vector<Vertex> verts = std::move(stack.back());
        stack.pop_back();
        if (verts.size() < 2) continue;
        MinCut cut = detail::stoer_wagner(wv, verts);
        for (Vertex v : verts) inside[v] = 1;
        for (EdgeId id = 0; id < g.num_edges(); ++id) {
            const Edge& e = g.edge(id);
            if (inside[e.u] && inside[e.v]) sm.strength[id] = std::max(sm.strength[id], cut.value);
        }
        for (Vertex v : verts) inside[v] = 0;

        std::vector<char> on_side(g.num_vertices(), 0);
        for (Vertex v : cut.side) on_side[v] = 1;
        std::vector<Vertex> rest;
        for (Vertex v : verts)
            if (!on_side[v]) rest.push_back(v);
        stack.push_back(cut.side);
        stack.push_back(std::move(rest));
    }
    return sm;
}

}  // namespace tspkit

#endif
