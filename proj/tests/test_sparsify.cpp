#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tspkit/lp2ecss.hpp"
#include "tspkit/oracles.hpp"
#include "tspkit/sparsify.hpp"

using namespace tspkit;
using namespace tspkit::testutil;

TEST_CASE("all retention probabilities 1: y is exactly (1+eps')x") {
    Graph g = unit_cycle(6);
    FractionalSolution x;
    for (EdgeId id = 0; id < 6; ++id) x.values[id] = 1.0;
    x.objective = 6.0;

    SparsifyParams params;
    params.epsilon = 0.5;
    params.seed = 99;
    SparsifyStats stats;
    FractionalSolution y = sparsify_solution(g, x, params, &stats);
    const double eps_prime = std::sqrt(1.5) - 1.0;
    CHECK(y.values.size() == 6);
    for (EdgeId id = 0; id < 6; ++id)
        CHECK(y.value(id) == doctest::Approx(1.0 + eps_prime));
    CHECK(stats.single_shot_success);
    CHECK(stats.attempts == 1);
}

TEST_CASE("an edge whose x equals its strength is always retained") {
    // Bridge edge: strength equals its own weight, p = min(1, delta/eps'^2) = 1.
    Graph g = build_graph(
        6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}, {0, 3, 1}});
    FractionalSolution x;
    for (EdgeId id = 0; id < 7; ++id) x.values[id] = 1.0;
    StrengthMap sm = exact_strengths(WeightedView::from_solution(g, x));
    CHECK(sm.of(6) == doctest::Approx(1.0));
    auto sp = sample_probabilities(g, x, sm, 0.22, 8.0 * std::log(6.0));
    CHECK(sp.p[6] == doctest::Approx(1.0));
    CHECK(sp.r[6] == doctest::Approx(1.0));
}

TEST_CASE("sampler is unbiased per edge") {
    Graph g = build_graph(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1}});
    FractionalSolution x;
    for (EdgeId id = 0; id < 5; ++id) x.values[id] = 1.0 + 0.25 * id;
    std::vector<double> r = {0.3, 0.5, 0.7, 0.9, 1.0};

    const int trials = 20000;
    std::vector<double> mean(5, 0.0);
    for (int t = 0; t < trials; ++t) {
        FractionalSolution s = sample_with_probabilities(g, x, r, 4242, t);
        for (EdgeId id = 0; id < 5; ++id) mean[id] += s.value(id);
    }
    for (EdgeId id = 0; id < 5; ++id) {
        mean[id] /= trials;
        // Var of one draw: x^2 (1-r)/r; allow 3 standard errors.
        double se = x.value(id) * std::sqrt((1.0 - r[id]) / r[id] / trials);
        CHECK(std::fabs(mean[id] - x.value(id)) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("unit C_12 output is feasible by exhaustive cut enumeration") {
    Graph g = unit_cycle(12);
    FractionalSolution x;
    for (EdgeId id = 0; id < 12; ++id) x.values[id] = 1.0;
    x.objective = 12.0;
    SparsifyParams params;
    params.epsilon = 0.5;
    params.seed = 7;
    params.debug_verify = true;
    FractionalSolution y = sparsify_solution(g, x, params);
    CHECK(enumerate_cut_violations(g, y).value >= 2.0 - 1e-9);
    CHECK(y.objective <= 1.5 * x.objective * (1.0 + 1e-9));
}

TEST_CASE("posterior contract holds across 200 seeded trials") {
    Rng rng(401);
    Graph g = random_connected_graph(10, 31, rng);  // n=10, m=40
    LpResult lp = solve_2ecss_lp(g);

    SparsifyParams params;
    params.epsilon = 0.5;
    params.d = 8.0;
    int single_shot = 0;
    for (int seed = 0; seed < 200; ++seed) {
        params.seed = static_cast<std::uint64_t>(seed);
        SparsifyStats stats;
        FractionalSolution y = sparsify_solution(g, lp.x, params, &stats);
        if (stats.single_shot_success) ++single_shot;
        for (const auto& [id, v] : y.values) {
            CHECK(v > 0.0);
            CHECK(lp.x.value(id) > 0.0);  // support containment
        }
        CHECK(y.objective <= (1.0 + params.epsilon) * lp.x.objective * (1.0 + 1e-9));
    }
    CHECK(single_shot >= 195);
}

TEST_CASE("identical seed gives identical output") {
    Rng rng(433);
    Graph g = random_connected_graph(9, 12, rng);
    LpResult lp = solve_2ecss_lp(g);
    SparsifyParams params;
    params.epsilon = 0.4;
    params.seed = 31337;
    FractionalSolution a = sparsify_solution(g, lp.x, params);
    FractionalSolution b = sparsify_solution(g, lp.x, params);
    CHECK(a.values.size() == b.values.size());
    for (const auto& [id, v] : a.values) CHECK(b.value(id) == v);
    CHECK(a.objective == b.objective);
}

TEST_CASE("parameter validation") {
    Graph g = unit_cycle(4);
    FractionalSolution x;
    for (EdgeId id = 0; id < 4; ++id) x.values[id] = 1.0;
    x.objective = 4.0;
    SparsifyParams bad_eps;
    bad_eps.epsilon = 0.0;
    CHECK_THROWS_AS(sparsify_solution(g, x, bad_eps), IngestionError);
    SparsifyParams bad_d;
    bad_d.d = 0.5;
    CHECK_THROWS_AS(sparsify_solution(g, x, bad_d), IngestionError);
}

TEST_CASE("debug verify rejects an infeasible input point") {
    Graph g = unit_cycle(5);
    FractionalSolution x;
    for (EdgeId id = 0; id < 5; ++id) x.values[id] = 0.5;
    x.objective = 2.5;
    SparsifyParams params;
    params.debug_verify = true;
    CHECK_THROWS_AS(sparsify_solution(g, x, params), CheckFailure);
}
