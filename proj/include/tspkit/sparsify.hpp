#ifndef TSPKIT_SPARSIFY_HPP
#define TSPKIT_SPARSIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tspkit/graph.hpp"
#include "tspkit/mincut.hpp"
#include "tspkit/oracles.hpp"

namespace tspkit {

struct SparsifyParams {
    double epsilon = 0.25;  // in (0,1)
    double d = 8.0;         // oversampling constant, >= 1
    std::uint64_t seed = 1;
    int max_attempts = 3;
    bool debug_verify = false;  // re-check feasibility of the input x
};

struct SparsifyStats {
    int attempts = 0;
    bool single_shot_success = false;
    int support_size = 0;
    double eps_prime = 0.0;
    double delta = 0.0;  // d * log n sampling parameter
};

namespace rng_detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based per-edge stream: the draw depends only on (seed, attempt,
// edge id), so evaluation order is irrelevant.
inline double uniform01(std::uint64_t seed, std::uint64_t attempt, std::uint64_t edge_id) {
    std::uint64_t h = splitmix64(splitmix64(seed ^ (attempt * 0xD1B54A32D192ED03ULL)) ^
                                 (edge_id * 0x9E3779B97F4A7C15ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace rng_detail

// Per-edge retention probabilities: p_e covers cut concentration via edge
// strengths, q_e covers cost concentration, r_e = max(p_e, q_e).
struct SampleProbabilities {
    std::vector<double> p, q, r;
};

inline SampleProbabilities sample_probabilities(const Graph& g, const FractionalSolution& x,
                                                const StrengthMap& strengths,
                                                double eps_prime, double delta) {
    SampleProbabilities sp;
    const int m = g.num_edges();
    sp.p.assign(m, 0.0);
    sp.q.assign(m, 0.0);
    sp.r.assign(m, 0.0);
    const double e2 = eps_prime * eps_prime;
    double total = 0.0;
    for (EdgeId e = 0; e < m; ++e) total += g.edge(e).cost * x.value(e);
    for (EdgeId e = 0; e < m; ++e) {
        double xe = x.value(e);
        if (xe <= 0.0) continue;
        double s = strengths.of(e);
        sp.p[e] = s > 0.0 ? std::min(1.0, delta * xe / (e2 * s)) : 1.0;
        sp.q[e] = total > 0.0 ? std::min(1.0, delta * g.edge(e).cost * xe / (e2 * total)) : 0.0;
        sp.r[e] = std::max(sp.p[e], sp.q[e]);
    }
    return sp;
}

// Independent Bernoulli keep/reweight step: edge e survives with probability
// r_e at value x_e / r_e. Unbiased per edge before any rescaling.
inline FractionalSolution sample_with_probabilities(const Graph& g, const FractionalSolution& x,
                                                    const std::vector<double>& r,
                                                    std::uint64_t seed, std::uint64_t attempt) {
    std::unordered_map<EdgeId, double> kept;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (r[e] <= 0.0 || x.value(e) <= 0.0) continue;
        if (r[e] >= 1.0 || rng_detail::uniform01(seed, attempt, e) < r[e])
            kept[e] = x.value(e) / r[e];
    }
    return FractionalSolution::from_values(g, std::move(kept));
}

// Cost-preserving cut sparsification of a feasible covering point x:
// returns y with support(y) inside support(x), cost within (1+eps), and all
// cuts still >= 2. Every output is posterior-checked; a failed draw is
// retried with fresh randomness.
inline FractionalSolution sparsify_solution(const Graph& g, const FractionalSolution& x,
                                            const SparsifyParams& params,
                                            SparsifyStats* stats = nullptr) {
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
        throw IngestionError("epsilon must lie in (0,1)");
    if (params.d < 1.0) throw IngestionError("oversampling constant d must be >= 1");

    const int n = g.num_vertices();
    const double eps = params.epsilon;
    const double eps_prime = std::sqrt(1.0 + eps) - 1.0;  // (1+eps')^2 <= 1+eps
    const double delta = params.d * std::max(1.0, std::log(static_cast<double>(n)));
    const double e2 = eps_prime * eps_prime;

    if (params.debug_verify) {
        MinCut mc = global_min_cut(WeightedView::from_solution(g, x));
        if (mc.value < 2.0 * (1.0 - 1e-9))
            throw CheckFailure("sparsify_solution: input x is infeasible (min cut " +
                               std::to_string(mc.value) + ")");
    }

    StrengthMap strengths = exact_strengths(WeightedView::from_solution(g, x));
    SampleProbabilities sp = sample_probabilities(g, x, strengths, eps_prime, delta);
    const double support_cap = 4.0 * (n * delta / e2 + delta / e2);

    SparsifyStats local;
    local.eps_prime = eps_prime;
    local.delta = delta;
    std::string last_failure;
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        ++local.attempts;
        FractionalSolution sampled =
            sample_with_probabilities(g, x, sp.r, params.seed, attempt);
        FractionalSolution y;
        for (const auto& [id, v] : sampled.values) y.values[id] = (1.0 + eps_prime) * v;
        y.objective = (1.0 + eps_prime) * sampled.objective;

        // Posterior checks: cost, support size, all cuts.
        if (y.objective > (1.0 + eps) * x.objective * (1.0 + 1e-9)) {
            last_failure = "cost bound exceeded";
            continue;
        }
        if (static_cast<double>(y.values.size()) > support_cap) {
            last_failure = "support size exceeded";
            continue;
        }
        double min_cut_value;
        if (n <= 14) {
            min_cut_value = enumerate_cut_violations(g, y).value;
        } else {
            min_cut_value = global_min_cut(WeightedView::from_solution(g, y)).value;
        }
        if (min_cut_value < 2.0 - 1e-9) {
            last_failure = "cut of value " + std::to_string(min_cut_value);
            continue;
        }

        local.single_shot_success = (attempt == 0);
        local.support_size = static_cast<int>(y.values.size());
        if (stats) *stats = local;
        return y;
    }
    if (stats) *stats = local;
    throw CheckFailure("sparsify_solution: " + std::to_string(params.max_attempts) +
                       " consecutive samples failed posterior checks (last: " +
                       last_failure + "); seed " + std::to_string(params.seed));
}

}  // namespace tspkit

#endif
