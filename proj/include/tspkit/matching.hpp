#ifndef TSPKIT_MATCHING_HPP
#define TSPKIT_MATCHING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <utility>
#include <vector>

#include "tspkit/errors.hpp"

namespace tspkit {

// Instance for minimum-cost perfect matching on a general graph.
struct MatchingInstance {
    int k = 0;                                      // vertex count, must be even
    std::vector<std::tuple<int, int, double>> edges;  // (i, j, cost), i != j

    void add_edge(int i, int j, double cost) { edges.emplace_back(i, j, cost); }
};

struct Matching {
    std::vector<std::pair<int, int>> pairs;  // k/2 pairs partitioning [0, k)
    double cost = 0.0;
    // Largest complementary-slackness violation of the final duals, in
    // original cost units (filled when audit is requested).
    double dual_violation = 0.0;
};

namespace blossom_detail {

// Maximum weight matching on general graphs in O(V^3), the classic blossom
// algorithm with dual adjustment. Vertices are 1-based internally; index 0
// is a sentinel. Weights are int64 and kept doubled inside e_delta so all
// dual values stay integral.
class MaxWeightMatcher {
public:
    using ll = long long;
    static constexpr ll kInf = std::numeric_limits<ll>::max() / 4;

    explicit MaxWeightMatcher(int n)
        : n_(n),
          n_x_(n),
          g_(2 * n + 1, std::vector<EdgeW>(2 * n + 1)),
          lab_(2 * n + 1, 0),
          match_(2 * n + 1, 0),
          slack_(2 * n + 1, 0),
          st_(2 * n + 1, 0),
          pa_(2 * n + 1, 0),
          side_(2 * n + 1, -1),
          vis_(2 * n + 1, 0),
          flower_(2 * n + 1),
          flower_from_(2 * n + 1, std::vector<int>(n + 1, 0)) {
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) g_[u][v] = {u, v, 0};
        for (int u = 1; u <= n_; ++u) flower_from_[u][u] = u;
    }

    // w must be positive for a usable edge; 0 means "no edge".
    void set_weight(int u, int v, ll w) { g_[u][v].w = g_[v][u].w = w; }

    // Returns the number of matched pairs. match_of() gives partners (0 if
    // unmatched).
    int solve() {
        int matches = 0;
        for (int u = 0; u <= n_; ++u) st_[u] = u;
        ll w_max = 0;
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) w_max = std::max(w_max, g_[u][v].w);
        for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
        while (grow()) ++matches;
        return matches;
    }

    int match_of(int u) const { return match_[u]; }

    // Max violation of dual feasibility / complementary slackness among
    // top-level nodes, in doubled-weight units. Exact optima yield 0.
    ll audit() const {
        ll worst = 0;
        for (int u = 1; u <= n_; ++u)
            for (int v = u + 1; v <= n_; ++v) {
                if (g_[u][v].w <= 0) continue;
                if (st_[u] == st_[v]) continue;  // inside a blossom; duals not pairwise
                ll slack = lab_[u] + lab_[v] - 2 * g_[u][v].w;
                worst = std::max(worst, -slack);
                if (match_[u] == v && st_[u] == u && st_[v] == v)
                    worst = std::max(worst, slack);
            }
        return worst;
    }

private:
    struct EdgeW {
        int u = 0, v = 0;
        ll w = 0;
    };

    ll e_delta(const EdgeW& e) const { return lab_[e.u] + lab_[e.v] - 2 * g_[e.u][e.v].w; }

    void update_slack(int u, int x) {
        if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (g_[u][x].w > 0 && st_[u] != x && side_[st_[u]] == 0) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int p : flower_[x]) q_push(p);
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int p : flower_[x]) set_st(p, b);
    }

    int get_pr(int b, int xr) {
        auto& f = flower_[b];
        int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
        if (pr % 2 == 1) {
            std::reverse(f.begin() + 1, f.end());
            return static_cast<int>(f.size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g_[u][v].v;
        if (u <= n_) return;
        EdgeW e = g_[u][v];
        int xr = flower_from_[u][e.u];
        int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++timer_; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis_[u] == timer_) return u;
            vis_[u] = timer_;
            u = st_[match_[u]];
            if (u) u = st_[pa_[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_x_ && st_[b]) ++b;
        if (b > n_x_) ++n_x_;
        lab_[b] = 0;
        side_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x_; ++x) g_[b][x].w = g_[x][b].w = 0;
        for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
        for (int xs : flower_[b]) {
            for (int x = 1; x <= n_x_; ++x)
                if (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x])) {
                    g_[b][x] = g_[xs][x];
                    g_[x][b] = g_[x][xs];
                }
            for (int x = 1; x <= n_; ++x)
                if (flower_from_[xs][x]) flower_from_[b][x] = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int c : flower_[b]) set_st(c, c);
        int xr = flower_from_[b][g_[b][pa_[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower_[b][i], xns = flower_[b][i + 1];
            pa_[xs] = g_[xns][xs].u;
            side_[xs] = 1;
            side_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        side_[xr] = 1;
        pa_[xr] = pa_[b];
        for (int i = pr + 1; i < static_cast<int>(flower_[b].size()); ++i) {
            int xs = flower_[b][i];
            side_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const EdgeW& e) {
        int u = st_[e.u], v = st_[e.v];
        if (side_[v] == -1) {
            pa_[v] = e.u;
            side_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = slack_[nu] = 0;
            side_[nu] = 0;
            q_push(nu);
        } else if (side_[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    // One phase: grow alternating forests from all free nodes, adjusting
    // duals until an augmenting path is found or none exists.
    bool grow() {
        std::fill(side_.begin(), side_.begin() + n_x_ + 1, -1);
        std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                side_[x] = 0;
                q_push(x);
            }
        if (q_.empty()) return false;
        for (;;) {
            while (!q_.empty()) {
                int u = q_.front();
                q_.pop_front();
                if (side_[st_[u]] == 1) continue;
                for (int v = 1; v <= n_; ++v)
                    if (g_[u][v].w > 0 && st_[u] != st_[v]) {
                        if (e_delta(g_[u][v]) == 0) {
                            if (on_found_edge(g_[u][v])) return true;
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
            }
            ll d = kInf;
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && side_[b] == 1) d = std::min(d, lab_[b] / 2);
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x]) {
                    if (side_[x] == -1)
                        d = std::min(d, e_delta(g_[slack_[x]][x]));
                    else if (side_[x] == 0)
                        d = std::min(d, e_delta(g_[slack_[x]][x]) / 2);
                }
            for (int u = 1; u <= n_; ++u) {
                if (side_[st_[u]] == 0) {
                    if (lab_[u] <= d) return false;  // no augmenting path exists
                    lab_[u] -= d;
                } else if (side_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b) {
                    if (side_[b] == 0)
                        lab_[b] += 2 * d;
                    else if (side_[b] == 1)
                        lab_[b] -= 2 * d;
                }
            q_.clear();
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    e_delta(g_[slack_[x]][x]) == 0)
                    if (on_found_edge(g_[slack_[x]][x])) return true;
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && side_[b] == 1 && lab_[b] == 0) expand_blossom(b);
        }
    }

    int n_, n_x_;
    std::vector<std::vector<EdgeW>> g_;
    std::vector<ll> lab_;
    std::vector<int> match_, slack_, st_, pa_, side_, vis_;
    std::vector<std::vector<int>> flower_, flower_from_;
    std::deque<int> q_;
    int timer_ = 0;
};

}  // namespace blossom_detail

// Exact minimum-cost perfect matching. Real costs are quantized to int64
// at ~1e-12 relative resolution and solved exactly; the reported cost is
// re-accumulated from the true costs of the chosen pairs.
inline Matching min_cost_perfect_matching(const MatchingInstance& inst, bool audit = false) {
    using ll = long long;
    if (inst.k % 2 != 0)
        throw InfeasibleError("perfect matching needs an even vertex count");
    Matching result;
    if (inst.k == 0) return result;

    double max_cost = 0.0;
    for (const auto& [i, j, c] : inst.edges) {
        if (!std::isfinite(c)) throw IngestionError("matching cost must be finite");
        max_cost = std::max(max_cost, std::fabs(c));
    }
    const double scale = max_cost > 0.0 ? std::ldexp(1.0, 40) / max_cost : 1.0;

    // Shift so every present edge has positive integer weight and maximum
    // weight matchings are forced to be perfect (each edge gains at least
    // shift - max_int_cost, which dominates any cardinality trade-off).
    const ll max_int_cost = static_cast<ll>(std::ldexp(1.0, 40)) + 1;
    const ll shift = (static_cast<ll>(inst.k) / 2 + 1) * max_int_cost + 1;

    blossom_detail::MaxWeightMatcher solver(inst.k);
    std::vector<std::vector<double>> true_cost(inst.k, std::vector<double>(inst.k, 0.0));
    std::vector<std::vector<char>> present(inst.k, std::vector<char>(inst.k, 0));
    for (const auto& [i, j, c] : inst.edges) {
        if (i == j || i < 0 || j < 0 || i >= inst.k || j >= inst.k)
            throw IngestionError("bad matching edge endpoints");
        ll w = shift - static_cast<ll>(std::llround(c * scale));
        if (!present[i][j] || c < true_cost[i][j]) {
            solver.set_weight(i + 1, j + 1, w);
            true_cost[i][j] = true_cost[j][i] = c;
            present[i][j] = present[j][i] = 1;
        }
    }

    int matched = solver.solve();
    if (matched * 2 != inst.k)
        throw InfeasibleError("no perfect matching exists");
    for (int u = 0; u < inst.k; ++u) {
        int v = solver.match_of(u + 1) - 1;
        if (v > u) {
            result.pairs.emplace_back(u, v);
            result.cost += true_cost[u][v];
        }
    }
    if (audit) result.dual_violation = static_cast<double>(solver.audit()) / (2.0 * scale);
    return result;
}

}  // namespace tspkit

#endif
