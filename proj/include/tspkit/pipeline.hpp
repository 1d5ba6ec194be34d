#ifndef TSPKIT_PIPELINE_HPP
#define TSPKIT_PIPELINE_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tspkit/graph.hpp"
#include "tspkit/lp2ecss.hpp"
#include "tspkit/mincut.hpp"
#include "tspkit/sparsify.hpp"
#include "tspkit/tjoin.hpp"

namespace tspkit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20210317;

struct Tour {
    std::vector<Vertex> order;  // each vertex once; closes back to front
    double cost = 0.0;
};

struct TourReport {
    std::string algorithm;
    std::uint64_t seed = kDefaultSeed;
    int n = 0, m = 0;
    double lp_objective = 0.0;
    double lp_lower_bound = 0.0;
    double lp_gap = 0.0;
    int support_size = 0;
    int sparsify_attempts = 0;
    bool sparsify_single_shot = false;
    double mst_cost = 0.0;
    double join_cost = 0.0;
    double walk_cost = 0.0;
    double shortcut_tour_cost = 0.0;
    double ratio_to_lower_bound = 0.0;
    std::vector<std::pair<std::string, double>> stage_seconds;
    std::vector<Vertex> walk;       // Eulerian closed walk in G
    EdgeMultiset eulerian_edges;    // the multigraph S + J
};

namespace pipeline_detail {

class StageClock {
public:
    explicit StageClock(TourReport& report) : report_(report) { reset(); }

    void mark(const std::string& name) {
        auto now = std::chrono::steady_clock::now();
        report_.stage_seconds.emplace_back(
            name, std::chrono::duration<double>(now - last_).count());
        last_ = now;
    }

    void reset() { last_ = std::chrono::steady_clock::now(); }

private:
    TourReport& report_;
    std::chrono::steady_clock::time_point last_;
};

inline void check(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure("pipeline bound violated: " + what);
}

inline std::vector<Vertex> odd_degree_vertices(const Graph& g, const EdgeMultiset& es) {
    std::vector<int> degree(g.num_vertices(), 0);
    for (const auto& [id, mult] : es.entries()) {
        degree[g.edge(id).u] += mult;
        degree[g.edge(id).v] += mult;
    }
    std::vector<Vertex> odd;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (degree[v] % 2 == 1) odd.push_back(v);
    return odd;
}

}  // namespace pipeline_detail

// Shortcut a closed walk covering all vertices to a Hamiltonian tour of the
// metric completion: keep first occurrences, price consecutive stops by
// shortest-path distance. Never costs more than the walk.
inline Tour shortcut_tour(const Graph& g, const std::vector<Vertex>& walk) {
    Tour tour;
    if (g.num_vertices() == 1) {
        tour.order = {0};
        return tour;
    }
    std::vector<char> seen(g.num_vertices(), 0);
    for (Vertex v : walk)
        if (!seen[v]) {
            seen[v] = 1;
            tour.order.push_back(v);
        }
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!seen[v])
            throw InfeasibleError("shortcut_tour: walk misses vertex " + std::to_string(v));
    for (std::size_t i = 0; i < tour.order.size(); ++i) {
        Vertex a = tour.order[i];
        Vertex b = tour.order[(i + 1) % tour.order.size()];
        tour.cost += shortest_paths(g, a).dist[b];
    }
    return tour;
}

struct RunConfig {
    std::string algorithm = "sparsified-christofides";
    double epsilon = 0.25;
    double d = 8.0;
    std::uint64_t seed = kDefaultSeed;
    bool debug_verify = false;
    bool keep_multiplicities = false;
    bool shortcut = true;
};

// Sparsified Christofides: MST, approximate covering LP, cut sparsifier,
// T-join inside the sparsifier support, Euler tour, shortcut. The chain
//   mst <= lp_objective,  join <= cost(y)/2,  walk = mst + join,
//   tour <= walk,  tour <= 1.5 (1+eps)(1+gap) lower_bound
// is asserted on every run.
inline std::pair<Tour, TourReport> apx_christofides(const Graph& g, const RunConfig& cfg) {
    TourReport report;
    report.algorithm = "sparsified-christofides";
    report.seed = cfg.seed;
    report.n = g.num_vertices();
    report.m = g.num_edges();
    pipeline_detail::StageClock clock(report);
    const double tol = 1e-9;

    EdgeMultiset tree = mst(g);
    report.mst_cost = tree.cost(g);
    std::vector<Vertex> T = pipeline_detail::odd_degree_vertices(g, tree);
    clock.mark("mst");

    SolverParams lp_params;
    lp_params.epsilon = cfg.epsilon;
    LpResult lp = solve_2ecss_lp(g, lp_params);
    report.lp_objective = lp.x.objective;
    report.lp_lower_bound = lp.lower_bound;
    report.lp_gap = lp.gap;
    clock.mark("lp");

    SparsifyParams sp_params;
    sp_params.epsilon = cfg.epsilon;
    sp_params.d = cfg.d;
    sp_params.seed = cfg.seed;
    sp_params.debug_verify = cfg.debug_verify;
    SparsifyStats sp_stats;
    FractionalSolution y = sparsify_solution(g, lp.x, sp_params, &sp_stats);
    report.support_size = sp_stats.support_size;
    report.sparsify_attempts = sp_stats.attempts;
    report.sparsify_single_shot = sp_stats.single_shot_success;
    clock.mark("sparsify");

    std::vector<EdgeId> support = y.support();
    JoinResult join =
        min_cost_tjoin(g, T, &support, cfg.keep_multiplicities, cfg.debug_verify);
    report.join_cost = join.cost;
    clock.mark("tjoin");

    EdgeMultiset eulerian = tree;
    for (const auto& [id, mult] : join.edges.entries()) eulerian.add(id, mult);
    report.eulerian_edges = eulerian;
    report.walk = euler_tour(g, eulerian);
    report.walk_cost = report.mst_cost + report.join_cost;
    Tour tour;
    if (cfg.shortcut) {
        tour = shortcut_tour(g, report.walk);
    } else {
        tour.order = report.walk;
        tour.cost = report.walk_cost;
    }
    report.shortcut_tour_cost = tour.cost;
    report.ratio_to_lower_bound =
        report.lp_lower_bound > 0.0 ? tour.cost / report.lp_lower_bound : 0.0;
    clock.mark("tour");

    using pipeline_detail::check;
    check(report.mst_cost <= report.lp_objective * (1.0 + tol), "mst_cost <= lp_objective");
    check(report.join_cost <= 0.5 * y.objective * (1.0 + tol), "join_cost <= cost(y)/2");
    check(report.shortcut_tour_cost <= report.walk_cost * (1.0 + tol) + tol,
          "tour_cost <= walk_cost");
    if (lp.certified)
        check(report.shortcut_tour_cost <=
                  1.5 * (1.0 + cfg.epsilon) * (1.0 + lp.gap) * report.lp_lower_bound *
                      (1.0 + tol),
              "tour_cost <= 1.5 (1+eps)(1+gap) lower_bound");
    return {std::move(tour), std::move(report)};
}

// Textbook Christofides: MST + exact T-join on the whole graph.
inline std::pair<Tour, TourReport> classic_christofides(const Graph& g,
                                                        const RunConfig& cfg = {}) {
    TourReport report;
    report.algorithm = "classic-christofides";
    report.seed = cfg.seed;
    report.n = g.num_vertices();
    report.m = g.num_edges();
    pipeline_detail::StageClock clock(report);

    EdgeMultiset tree = mst(g);
    report.mst_cost = tree.cost(g);
    std::vector<Vertex> T = pipeline_detail::odd_degree_vertices(g, tree);
    clock.mark("mst");

    JoinResult join =
        min_cost_tjoin(g, T, nullptr, cfg.keep_multiplicities, cfg.debug_verify);
    report.join_cost = join.cost;
    clock.mark("tjoin");

    EdgeMultiset eulerian = tree;
    for (const auto& [id, mult] : join.edges.entries()) eulerian.add(id, mult);
    report.eulerian_edges = eulerian;
    report.walk = euler_tour(g, eulerian);
    report.walk_cost = report.mst_cost + report.join_cost;
    Tour tour = cfg.shortcut ? shortcut_tour(g, report.walk)
                             : Tour{report.walk, report.walk_cost};
    report.shortcut_tour_cost = tour.cost;
    clock.mark("tour");
    return {std::move(tour), std::move(report)};
}

// Double-tree 2-approximation: duplicate the MST and shortcut.
inline std::pair<Tour, TourReport> double_tree(const Graph& g, const RunConfig& cfg = {}) {
    TourReport report;
    report.algorithm = "double-tree";
    report.seed = cfg.seed;
    report.n = g.num_vertices();
    report.m = g.num_edges();
    pipeline_detail::StageClock clock(report);

    EdgeMultiset tree = mst(g);
    report.mst_cost = tree.cost(g);
    report.join_cost = report.mst_cost;  // the duplicate copy
    clock.mark("mst");

    EdgeMultiset eulerian;
    for (const auto& [id, mult] : tree.entries()) eulerian.add(id, 2 * mult);
    report.eulerian_edges = eulerian;
    report.walk = euler_tour(g, eulerian);
    report.walk_cost = report.mst_cost + report.join_cost;
    Tour tour = cfg.shortcut ? shortcut_tour(g, report.walk)
                             : Tour{report.walk, report.walk_cost};
    report.shortcut_tour_cost = tour.cost;
    clock.mark("tour");
    return {std::move(tour), std::move(report)};
}

inline std::pair<Tour, TourReport> run_algorithm(const Graph& g, const RunConfig& cfg) {
    if (cfg.algorithm == "sparsified-christofides") return apx_christofides(g, cfg);
    if (cfg.algorithm == "classic-christofides") return classic_christofides(g, cfg);
    if (cfg.algorithm == "double-tree") return double_tree(g, cfg);
    throw IngestionError("unknown algorithm: " + cfg.algorithm);
}

}  // namespace tspkit

#endif
