#ifndef TSPKIT_LP2ECSS_HPP
#define TSPKIT_LP2ECSS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tspkit/graph.hpp"
#include "tspkit/mincut.hpp"

namespace tspkit {

struct SolverParams {
    double epsilon = 0.25;   // target relative gap, in (0,1)
    long max_iterations = 0; // 0 = 50*m*ceil(log2 n)/eps^2
    double delta0 = 0.0;     // 0 = (1+eps')*((1+eps')*n)^(-1/eps') with eps' = eps/3
};

struct LpResult {
    FractionalSolution x;     // feasible: every cut under x has value >= 2
    double lower_bound = 0.0; // certified dual value <= LP optimum
    double gap = 0.0;         // objective / lower_bound - 1
    long iterations = 0;
    bool certified = false;   // gap <= epsilon reached before the cap
};

namespace gk_detail {

// Terminal solver state handed to the certificate routine.
struct DualState {
    double accumulated = 0.0;      // sum of 2 * bottleneck over all routed cuts
    std::vector<double> routed;    // per-edge total routed amount
    std::vector<double> capacity;  // per-edge cost
    double eps_prime = 0.0;
    double delta0 = 0.0;
};

}  // namespace gk_detail

// A-posteriori weak-duality certificate: the accumulated cut packing,
// rescaled by the worst per-edge capacity violation, is dual feasible, so
// its value lower-bounds the LP optimum regardless of convergence. The
// multiplicative-weights schedule keeps the violation at most
// log_{1+eps'}(1/delta0); the exact violation is used when larger.
inline double certify_lower_bound(const gk_detail::DualState& s) {
    if (s.accumulated <= 0.0) return 0.0;
    double violation = 0.0;
    for (std::size_t e = 0; e < s.routed.size(); ++e)
        if (s.capacity[e] > 0.0)
            violation = std::max(violation, s.routed[e] / s.capacity[e]);
    double schedule = std::log(1.0 / s.delta0) / std::log1p(s.eps_prime);
    return s.accumulated / std::max(violation, schedule);
}

// (1+eps)-approximate solver for the cut-covering LP
//   min sum c_e x_e  s.t.  x(delta(U)) >= 2 for all nontrivial U, x >= 0.
// Garg-Konemann-style: pack minimum cuts in the dual, maintain edge lengths,
// and extract the primal as x = 2 l / mincut_l(G); feasibility of x is by
// construction and re-verified at the end. Zero-cost edges are fixed to
// value 2 and their endpoints contracted for the solve.
inline LpResult solve_2ecss_lp(const Graph& g, const SolverParams& params = {}) {
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
        throw IngestionError("epsilon must lie in (0,1)");
    require_connected(g, "solve_2ecss_lp");
    if (g.num_vertices() < 2) throw InfeasibleError("solve_2ecss_lp needs n >= 2");

    // Contract zero-cost edges.
    std::vector<Vertex> uf(g.num_vertices());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](Vertex v) {
        while (uf[v] != v) v = uf[v] = uf[uf[v]];
        return v;
    };
    std::vector<EdgeId> zero_cost;
    for (EdgeId id = 0; id < g.num_edges(); ++id)
        if (g.edge(id).cost == 0.0) {
            zero_cost.push_back(id);
            uf[find(g.edge(id).u)] = find(g.edge(id).v);
        }
    std::vector<Vertex> label(g.num_vertices(), -1);
    int nc = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        Vertex r = find(v);
        if (label[r] < 0) label[r] = nc++;
        label[v] = label[r];
    }

    LpResult res;
    for (EdgeId id : zero_cost) res.x.values[id] = 2.0;
    if (nc < 2) {
        // Zero-cost edges span everything; every cut already carries value 4+.
        res.certified = true;
        return res;
    }

    std::vector<Edge> cedges;
    std::vector<EdgeId> back;  // contracted edge -> original id
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
        const Edge& e = g.edge(id);
        Vertex a = label[e.u], b = label[e.v];
        if (a == b) continue;
        cedges.push_back({a, b, e.cost});
        back.push_back(id);
    }
    Graph cg(nc, std::move(cedges));
    const int m = cg.num_edges();

    const double eps = params.epsilon;
    const double eps_prime = eps / 3.0;
    const double delta0 =
        params.delta0 > 0.0
            ? params.delta0
            : (1.0 + eps_prime) * std::pow((1.0 + eps_prime) * nc, -1.0 / eps_prime);
    const long cap =
        params.max_iterations > 0
            ? params.max_iterations
            : static_cast<long>(50.0 * m * std::ceil(std::log2(std::max(2, nc))) /
                                (eps * eps));

    WeightedView lengths{&cg, std::vector<double>(m)};
    gk_detail::DualState dual;
    dual.routed.assign(m, 0.0);
    dual.capacity.resize(m);
    dual.eps_prime = eps_prime;
    dual.delta0 = delta0;
    for (EdgeId e = 0; e < m; ++e) {
        dual.capacity[e] = cg.edge(e).cost;
        lengths.weights[e] = delta0 / cg.edge(e).cost;
    }

    std::vector<double> best_lengths;
    double best_obj = kInf, best_lb = 0.0, best_cut_value = 0.0;
    long it = 0;
    for (; it < cap; ++it) {
        MinCut cut = global_min_cut(lengths);
        if (cut.value <= 0.0)
            throw InfeasibleError("solve_2ecss_lp: graph is disconnected");

        // Primal extraction from the current lengths.
        double len_cost = 0.0;
        for (EdgeId e = 0; e < m; ++e) len_cost += cg.edge(e).cost * lengths.weights[e];
        double obj = 2.0 * len_cost / cut.value;
        if (obj < best_obj) {
            best_obj = obj;
            best_cut_value = cut.value;
            best_lengths = lengths.weights;
        }

        best_lb = std::max(best_lb, certify_lower_bound(dual));
        if (best_lb > 0.0 && best_obj / best_lb - 1.0 <= eps) break;

        // Route the bottleneck capacity on the cut and lengthen its edges.
        std::vector<char> on_side(nc, 0);
        for (Vertex v : cut.side) on_side[v] = 1;
        double bottleneck = kInf;
        std::vector<EdgeId> cut_edges;
        for (EdgeId e = 0; e < m; ++e)
            if (on_side[cg.edge(e).u] != on_side[cg.edge(e).v]) {
                cut_edges.push_back(e);
                bottleneck = std::min(bottleneck, cg.edge(e).cost);
            }
        dual.accumulated += 2.0 * bottleneck;
        for (EdgeId e : cut_edges) {
            dual.routed[e] += bottleneck;
            lengths.weights[e] *= 1.0 + eps_prime * bottleneck / cg.edge(e).cost;
        }
    }

    res.iterations = it;
    res.lower_bound = best_lb;
    res.gap = best_lb > 0.0 ? best_obj / best_lb - 1.0 : kInf;
    res.certified = res.gap <= eps;
    for (EdgeId e = 0; e < m; ++e)
        res.x.values[back[e]] = 2.0 * best_lengths[e] / best_cut_value;
    res.x.objective = 0.0;
    for (const auto& [id, v] : res.x.values) res.x.objective += g.edge(id).cost * v;

    // Unconditional feasibility check on the original graph.
    MinCut check = global_min_cut(WeightedView::from_solution(g, res.x));
    if (check.value < 2.0 * (1.0 - 1e-9))
        throw CheckFailure("solve_2ecss_lp: extracted point violates a cut (value " +
                           std::to_string(check.value) + ")");
    return res;
}

}  // namespace tspkit

#endif
