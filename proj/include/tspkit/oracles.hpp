#ifndef TSPKIT_ORACLES_HPP
#define TSPKIT_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "tspkit/graph.hpp"

namespace tspkit {

struct CutWitness {
    double value = kInf;
    std::vector<Vertex> side;  // the side containing vertex 0
    bool feasible(double threshold) const { return value >= threshold - 1e-9; }
};

// Exhaustive scan of all 2^{n-1}-1 nontrivial cuts under the edge vector x.
// Returns the minimum cut value and a witnessing side. n <= 24.
inline CutWitness enumerate_cut_violations(const Graph& g, const FractionalSolution& x,
                                           double /*threshold*/ = 2.0) {
    const int n = g.num_vertices();
    if (n > 24) throw CapacityError("cut enumeration limited to n <= 24");
    if (n < 2) throw InfeasibleError("cut enumeration needs n >= 2");
    CutWitness best;
    // Masks over vertices 1..n-1; vertex 0 stays on the complement side.
    const std::uint32_t limit = 1u << (n - 1);
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        double value = 0.0;
        for (EdgeId id = 0; id < g.num_edges(); ++id) {
            const Edge& e = g.edge(id);
            bool in_u = e.u != 0 && (mask >> (e.u - 1)) & 1u;
            bool in_v = e.v != 0 && (mask >> (e.v - 1)) & 1u;
            if (in_u != in_v) value += x.value(id);
        }
        if (value < best.value) {
            best.value = value;
            best.side.clear();
            best.side.push_back(0);
            for (Vertex v = 1; v < n; ++v)
                if (!((mask >> (v - 1)) & 1u)) best.side.push_back(v);
        }
    }
    return best;
}

// All-pairs shortest path distances (metric completion of g).
inline std::vector<std::vector<double>> metric_completion(const Graph& g) {
    std::vector<std::vector<double>> d;
    d.reserve(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) d.push_back(shortest_paths(g, v).dist);
    return d;
}

// Exact optimal Hamiltonian cycle cost over the shortest-path metric of g,
// by Held-Karp bitmask DP. n <= 14.
inline double held_karp_opt(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 14) throw CapacityError("held_karp_opt limited to n <= 14");
    if (!g.connected()) throw InfeasibleError("held_karp_opt: graph is disconnected");
    if (n == 1) return 0.0;
    auto d = metric_completion(g);
    if (n == 2) return 2.0 * d[0][1];

    // dp[mask][v]: cheapest path from 0 through mask (mask excludes 0), ending at v.
    const int full = (1 << (n - 1)) - 1;
    std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, kInf));
    for (Vertex v = 1; v < n; ++v) dp[1 << (v - 1)][v] = d[0][v];
    for (int mask = 1; mask <= full; ++mask) {
        for (Vertex v = 1; v < n; ++v) {
            if (!((mask >> (v - 1)) & 1)) continue;
            double cur = dp[mask][v];
            if (cur == kInf) continue;
            for (Vertex w = 1; w < n; ++w) {
                if ((mask >> (w - 1)) & 1) continue;
                int nmask = mask | (1 << (w - 1));
                if (cur + d[v][w] < dp[nmask][w]) dp[nmask][w] = cur + d[v][w];
            }
        }
    }
    double best = kInf;
    for (Vertex v = 1; v < n; ++v) best = std::min(best, dp[full][v] + d[v][0]);
    return best;
}

}  // namespace tspkit

#endif
