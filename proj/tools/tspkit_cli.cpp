// Command-line front end: solve / lp / sparsify / tjoin / bench subcommands
// over edge-list, distance-matrix, and planar-coordinate instances.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tspkit/tspkit.hpp"

namespace {

struct CommonOpts {
    std::string input;
    std::string format;  // empty = take from the instance's problem line
    std::string report_path;
    double epsilon = 0.25;
    double d = 8.0;
    std::uint64_t seed = tspkit::kDefaultSeed;
    bool seed_given = false;
    bool debug_verify = false;
    bool keep_multiplicities = false;
    bool emit_tour = false;
    bool emit_multigraph = false;
    std::string algorithm = "sparsified-christofides";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_algorithm) {
    cmd->add_option("--input", o.input, "instance file")->required();
    cmd->add_option("--format", o.format, "instance format")
        ->check(CLI::IsMember({"edge", "matrix", "euc2d"}));
    cmd->add_option("--report", o.report_path, "write the JSON report here");
    cmd->add_option("--epsilon", o.epsilon, "approximation parameter in (0,1)");
    cmd->add_option("--d", o.d, "sparsifier oversampling constant");
    cmd->add_option("--seed", o.seed, "RNG seed")->each([&o](const std::string&) {
        o.seed_given = true;
    });
    cmd->add_flag("--debug-verify", o.debug_verify, "run extra posterior checks");
    cmd->add_flag("--keep-multiplicities", o.keep_multiplicities,
                  "do not reduce the T-join mod 2");
    cmd->add_flag("--emit-tour", o.emit_tour, "include the tour in the report");
    cmd->add_flag("--emit-multigraph", o.emit_multigraph,
                  "include the Eulerian multigraph in the report");
    if (with_algorithm)
        cmd->add_option("--algorithm", o.algorithm, "tour algorithm")
            ->check(CLI::IsMember(
                {"sparsified-christofides", "classic-christofides", "double-tree"}));
}

void resolve_seed(CommonOpts& o) {
    if (o.seed_given) return;
    if (const char* env = std::getenv("TSPKIT_SEED")) o.seed = std::strtoull(env, nullptr, 10);
}

tspkit::RunConfig to_config(const CommonOpts& o) {
    tspkit::RunConfig cfg;
    cfg.algorithm = o.algorithm;
    cfg.epsilon = o.epsilon;
    cfg.d = o.d;
    cfg.seed = o.seed;
    cfg.debug_verify = o.debug_verify;
    cfg.keep_multiplicities = o.keep_multiplicities;
    return cfg;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.report_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.report_path);
        if (!out) throw tspkit::IngestionError("cannot write report: " + o.report_path);
        out << text;
    }
}

int run_solve(const CommonOpts& o) {
    tspkit::Graph g = tspkit::parse_instance_file(o.input, o.format);
    auto [tour, report] = tspkit::run_algorithm(g, to_config(o));
    emit(o, tspkit::write_report(report, o.emit_tour ? &tour : nullptr, o.emit_multigraph));
    return 0;
}

int run_lp(const CommonOpts& o) {
    tspkit::Graph g = tspkit::parse_instance_file(o.input, o.format);
    tspkit::SolverParams params;
    params.epsilon = o.epsilon;
    tspkit::LpResult lp = tspkit::solve_2ecss_lp(g, params);
    std::ostringstream out;
    out << "lp_objective " << tspkit::report_detail::fmt(lp.x.objective) << "\n"
        << "lp_lower_bound " << tspkit::report_detail::fmt(lp.lower_bound) << "\n"
        << "lp_gap " << tspkit::report_detail::fmt(lp.gap) << "\n";
    emit(o, out.str());
    return 0;
}

int run_sparsify(const CommonOpts& o) {
    tspkit::Graph g = tspkit::parse_instance_file(o.input, o.format);
    tspkit::SolverParams lp_params;
    lp_params.epsilon = o.epsilon;
    tspkit::LpResult lp = tspkit::solve_2ecss_lp(g, lp_params);
    tspkit::SparsifyParams sp;
    sp.epsilon = o.epsilon;
    sp.d = o.d;
    sp.seed = o.seed;
    sp.debug_verify = o.debug_verify;
    tspkit::SparsifyStats stats;
    tspkit::FractionalSolution y = tspkit::sparsify_solution(g, lp.x, sp, &stats);
    std::ostringstream out;
    out << "input_support " << lp.x.support().size() << "\n"
        << "output_support " << stats.support_size << "\n"
        << "attempts " << stats.attempts << "\n"
        << "single_shot_success " << (stats.single_shot_success ? "true" : "false") << "\n"
        << "cost_x " << tspkit::report_detail::fmt(lp.x.objective) << "\n"
        << "cost_y " << tspkit::report_detail::fmt(y.objective) << "\n";
    emit(o, out.str());
    return 0;
}

int run_tjoin(const CommonOpts& o) {
    tspkit::Graph g = tspkit::parse_instance_file(o.input, o.format);
    tspkit::EdgeMultiset tree = tspkit::mst(g);
    std::vector<int> degree(g.num_vertices(), 0);
    for (const auto& [id, mult] : tree.entries()) {
        degree[g.edge(id).u] += mult;
        degree[g.edge(id).v] += mult;
    }
    std::vector<tspkit::Vertex> T;
    for (tspkit::Vertex v = 0; v < g.num_vertices(); ++v)
        if (degree[v] % 2 == 1) T.push_back(v);
    tspkit::JoinResult join =
        tspkit::min_cost_tjoin(g, T, nullptr, o.keep_multiplicities, o.debug_verify);
    std::ostringstream out;
    out << "parity_set_size " << T.size() << "\n"
        << "join_edges " << join.edges.total_count() << "\n"
        << "join_cost " << tspkit::report_detail::fmt(join.cost) << "\n";
    emit(o, out.str());
    return 0;
}

int run_bench(const CommonOpts& o) {
    tspkit::Graph g = tspkit::parse_instance_file(o.input, o.format);
    std::ostringstream out;
    for (const char* algo :
         {"double-tree", "classic-christofides", "sparsified-christofides"}) {
        tspkit::RunConfig cfg = to_config(o);
        cfg.algorithm = algo;
        auto start = std::chrono::steady_clock::now();
        auto [tour, report] = tspkit::run_algorithm(g, cfg);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << algo << " tour_cost " << tspkit::report_detail::fmt(tour.cost)
            << " seconds " << tspkit::report_detail::fmt(secs) << "\n";
    }
    emit(o, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate metric TSP toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* solve = app.add_subcommand("solve", "run a tour algorithm end to end");
    add_common(solve, opts, true);
    CLI::App* lp = app.add_subcommand("lp", "approximate the cut-covering LP only");
    add_common(lp, opts, false);
    CLI::App* sparsify = app.add_subcommand("sparsify", "solve the LP and sparsify it");
    add_common(sparsify, opts, false);
    CLI::App* tjoin = app.add_subcommand("tjoin", "minimum T-join on the MST's odd vertices");
    add_common(tjoin, opts, false);
    CLI::App* bench = app.add_subcommand("bench", "compare all algorithms on one instance");
    add_common(bench, opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    resolve_seed(opts);
    try {
        if (solve->parsed()) return run_solve(opts);
        if (lp->parsed()) return run_lp(opts);
        if (sparsify->parsed()) return run_sparsify(opts);
        if (tjoin->parsed()) return run_tjoin(opts);
        if (bench->parsed()) return run_bench(opts);
    } catch (const tspkit::CheckFailure& e) {
        std::cerr << "internal check failure: " << e.what() << "\n";
        return 2;
    } catch (const tspkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}
