#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "test_util.hpp"
#include "tspkit/io.hpp"
#include "tspkit/oracles.hpp"
#include "tspkit/pipeline.hpp"

using namespace tspkit;
using namespace tspkit::testutil;

TEST_CASE("shortcut examples") {
    Graph two = build_graph(2, {{0, 1, 3.0}});
    Tour t = shortcut_tour(two, {0, 1, 0});
    CHECK(t.order == std::vector<Vertex>{0, 1});
    CHECK(t.cost == doctest::Approx(6.0));

    // Unit star centered at 1.
    Graph star = build_graph(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}});
    Tour s = shortcut_tour(star, {0, 1, 2, 1, 3, 1, 0});
    CHECK(s.order == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(s.cost == doctest::Approx(6.0));

    // No repeats: identity.
    Graph tri = build_graph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
    Tour r = shortcut_tour(tri, {0, 1, 2, 0});
    CHECK(r.order == std::vector<Vertex>{0, 1, 2});
    CHECK(r.cost == doctest::Approx(3.0));

    CHECK_THROWS_AS(shortcut_tour(star, {0, 1, 0}), InfeasibleError);
}

TEST_CASE("sparsified christofides on the unit 5-cycle") {
    Graph g = unit_cycle(5);
    RunConfig cfg;
    cfg.epsilon = 0.25;
    auto [tour, report] = apx_christofides(g, cfg);
    CHECK(report.mst_cost == doctest::Approx(4.0));
    CHECK(report.join_cost == doctest::Approx(1.0));
    CHECK(report.walk_cost == doctest::Approx(5.0));
    CHECK(tour.cost == doctest::Approx(5.0));
    CHECK(report.ratio_to_lower_bound <= 5.0 / (5.0 / 1.25) + 1e-9);
}

TEST_CASE("two-vertex instance is forced") {
    Graph g = build_graph(2, {{0, 1, 3.0}});
    RunConfig cfg;
    auto [tour, report] = apx_christofides(g, cfg);
    CHECK(report.walk == std::vector<Vertex>{0, 1, 0});
    CHECK(report.walk_cost == doctest::Approx(6.0));
    CHECK(tour.cost == doctest::Approx(6.0));
}

TEST_CASE("classic christofides examples") {
    auto [tour5, rep5] = classic_christofides(unit_cycle(5));
    CHECK(tour5.cost == doctest::Approx(5.0));

    Graph star = build_graph(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}});
    auto [tstar, rstar] = classic_christofides(star);
    CHECK(tstar.cost == doctest::Approx(6.0));
}

TEST_CASE("double tree examples") {
    auto [t5, r5] = double_tree(unit_cycle(5));
    CHECK(r5.walk_cost == doctest::Approx(8.0));
    CHECK(t5.cost <= 8.0 + 1e-9);
    CHECK(t5.cost == doctest::Approx(held_karp_opt(unit_cycle(5))));

    Graph two = build_graph(2, {{0, 1, 3.0}});
    auto [t2, r2] = double_tree(two);
    CHECK(t2.cost == doctest::Approx(6.0));
}

TEST_CASE("approximation guarantees on random instances") {
    Rng rng(601);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 5 + rng.below(9);  // 5..13
        Graph g = random_connected_graph(n, 10, rng);
        double opt = held_karp_opt(g);

        RunConfig cfg;
        cfg.epsilon = 0.25;
        cfg.seed = 1000 + trial;
        auto [apx_tour, apx_rep] = apx_christofides(g, cfg);
        CHECK(apx_tour.cost <= 1.5 * 1.25 * opt * (1.0 + 1e-9));
        CHECK(apx_rep.mst_cost <= apx_rep.lp_objective + 1e-9);
        CHECK(apx_tour.cost <= apx_rep.walk_cost + 1e-9);
        CHECK(apx_rep.lp_lower_bound <= opt + 1e-9);
        CHECK(apx_rep.ratio_to_lower_bound >= 1.0 - 1e-9);

        auto [classic_tour, classic_rep] = classic_christofides(g);
        CHECK(classic_tour.cost <= 1.5 * opt * (1.0 + 1e-9));

        auto [dt_tour, dt_rep] = double_tree(g);
        CHECK(dt_tour.cost <= 2.0 * opt * (1.0 + 1e-9));
    }
}

TEST_CASE("tour visits every vertex exactly once") {
    Rng rng(617);
    Graph g = random_connected_graph(11, 9, rng);
    RunConfig cfg;
    auto [tour, report] = apx_christofides(g, cfg);
    CHECK(tour.order.size() == 11);
    std::vector<char> seen(11, 0);
    for (Vertex v : tour.order) {
        CHECK(!seen[v]);
        seen[v] = 1;
    }
}

namespace {

std::string strip_timings(const std::string& report) {
    std::istringstream in(report);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"timings\"") == std::string::npos) out << line << "\n";
    return out.str();
}

}  // namespace

TEST_CASE("reports are deterministic modulo timings") {
    Rng rng(631);
    Graph g = random_connected_graph(10, 10, rng);
    RunConfig cfg;
    cfg.seed = 77;
    auto [tour_a, rep_a] = apx_christofides(g, cfg);
    auto [tour_b, rep_b] = apx_christofides(g, cfg);
    CHECK(strip_timings(write_report(rep_a, &tour_a, true)) ==
          strip_timings(write_report(rep_b, &tour_b, true)));
}

TEST_CASE("report serialization shape") {
    Graph g = unit_cycle(5);
    RunConfig cfg;
    auto [tour, report] = apx_christofides(g, cfg);
    std::string json = write_report(report, &tour, true);
    for (const char* key :
         {"\"algorithm\"", "\"seed\"", "\"lp_objective\"", "\"lp_lower_bound\"",
          "\"lp_gap\"", "\"support_size\"", "\"mst_cost\"", "\"join_cost\"",
          "\"walk_cost\"", "\"shortcut_tour_cost\"", "\"ratio_to_lower_bound\"",
          "\"tour\"", "\"multigraph\"", "\"timings\""})
        CHECK(json.find(key) != std::string::npos);
}

TEST_CASE("unknown algorithm is a usage error") {
    RunConfig cfg;
    cfg.algorithm = "simulated-annealing";
    CHECK_THROWS_AS(run_algorithm(unit_cycle(4), cfg), IngestionError);
}
