#ifndef TSPKIT_TJOIN_HPP
#define TSPKIT_TJOIN_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "tspkit/graph.hpp"
#include "tspkit/matching.hpp"

namespace tspkit {

struct JoinResult {
    EdgeMultiset edges;  // odd-degree vertex set equals T exactly
    double cost = 0.0;
    double matching_dual_violation = 0.0;  // filled under audit
};

// Minimum-cost T-join via the metric-completion reduction: shortest paths
// between all pairs of T, a minimum-cost perfect matching on the T-clique,
// matched pairs expanded back to path edges. Overlapping paths are reduced
// mod 2 unless keep_multiplicities is set (parity is unaffected and the
// cost never increases since costs are nonnegative).
//
// edge_subset, when given, restricts the join to that subgraph (e.g. the
// support of a sparsified LP solution).
inline JoinResult min_cost_tjoin(const Graph& g, std::vector<Vertex> T,
                                 const std::vector<EdgeId>* edge_subset = nullptr,
                                 bool keep_multiplicities = false, bool audit = false) {
    JoinResult result;
    if (T.empty()) return result;
    if (T.size() % 2 != 0)
        throw InfeasibleError("T-join needs an even parity set, got |T| = " +
                              std::to_string(T.size()));
    std::sort(T.begin(), T.end());
    const int k = static_cast<int>(T.size());

    std::vector<ShortestPaths> sp;
    sp.reserve(k);
    for (Vertex t : T) sp.push_back(shortest_paths(g, t, edge_subset));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (sp[i].dist[T[j]] == kInf)
                throw InfeasibleError("T-join: vertices " + std::to_string(T[i]) + " and " +
                                      std::to_string(T[j]) +
                                      " lie in different components of the subgraph");

    MatchingInstance inst;
    inst.k = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) inst.add_edge(i, j, sp[i].dist[T[j]]);
    Matching matching = min_cost_perfect_matching(inst, audit);
    result.matching_dual_violation = matching.dual_violation;

    EdgeMultiset join;
    for (const auto& [i, j] : matching.pairs) {
        // Walk the shortest-path tree of T[i] back from T[j].
        Vertex v = T[j];
        while (v != T[i]) {
            EdgeId id = sp[i].parent_edge[v];
            join.add(id);
            v = g.edge(id).other(v);
        }
    }
    if (!keep_multiplicities) {
        EdgeMultiset reduced;
        for (const auto& [id, mult] : join.entries())
            if (mult % 2 == 1) reduced.add(id);
        join = reduced;
    }
    result.edges = join;
    result.cost = join.cost(g);

    // The output's odd-degree set must be exactly T.
    std::vector<int> degree(g.num_vertices(), 0);
    for (const auto& [id, mult] : result.edges.entries()) {
        degree[g.edge(id).u] += mult;
        degree[g.edge(id).v] += mult;
    }
    std::vector<Vertex> odd;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (degree[v] % 2 == 1) odd.push_back(v);
    if (odd != T) throw CheckFailure("T-join parity check failed");
    return result;
}

}  // namespace tspkit

#endif
