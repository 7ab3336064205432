#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "necsolve/solver.hpp"
#include "necsolve/testkit.hpp"

using json = nlohmann::ordered_json;
using namespace necsolve;

namespace {

struct CommonArgs {
    std::string graph_file;
    std::string layout_file;
    std::string layout_gen;
    uint64_t seed = 1;
};

uint64_t sat_pow(uint64_t base, uint64_t exp) {
    const uint64_t cap = uint64_t(1) << 62;
    uint64_t r = 1;
    for (uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap;
        r *= base;
    }
    return r;
}

Graph load_graph(const CommonArgs& args) {
    if (args.graph_file.empty()) throw ParseError("missing --graph");
    Graph g = read_graph_file(args.graph_file);
    if (g.n() == 0) throw ParseError(args.graph_file + ": graph has no vertices");
    return g;
}

RootedLayout load_layout(const Graph& g, const CommonArgs& args) {
    RootedLayout layout;
    if (!args.layout_file.empty()) {
        std::ifstream in(args.layout_file);
        if (!in) throw ParseError(args.layout_file + ": cannot open");
        std::stringstream ss;
        ss << in.rdbuf();
        layout = RootedLayout::from_expression(ss.str());
        layout.finalize(g.n());
    } else {
        std::string gen = args.layout_gen.empty() ? "linear" : args.layout_gen;
        if (gen == "linear") {
            layout = generate_linear(g);
        } else if (gen == "random") {
            layout = generate_random(g, args.seed);
        } else if (gen.rfind("greedy", 0) == 0) {
            uint32_t d = 1;
            auto colon = gen.find(':');
            if (colon != std::string::npos)
                d = uint32_t(std::stoul(gen.substr(colon + 1)));
            layout = generate_greedy_nec(g, d, args.seed);
        } else {
            throw ParseError("unknown --layout-gen `" + gen +
                             "`; expected linear|random|greedy:d");
        }
    }
    LayoutValidation v = validate_layout(layout, g);
    if (!v.ok)
        throw ParseError("invalid layout: " + v.message +
                         (v.node >= 0 ? " (node " + std::to_string(v.node) + ")" : ""));
    return layout;
}

ProblemSpec resolve_problem(const std::string& name, const std::string& sigma,
                            const std::string& rho, const std::string& direction,
                            const std::string& constraint,
                            const std::string& terminals, int n) {
    ProblemSpec spec;
    if (!name.empty()) {
        spec = catalog(name);
    } else {
        if (sigma.empty() || rho.empty())
            throw ParseError("give --problem or both --sigma and --rho");
        spec.sigma = CofiniteSet::parse(sigma);
        spec.rho = CofiniteSet::parse(rho);
        if (direction == "max")
            spec.direction = Direction::maximize;
        else if (direction == "min")
            spec.direction = Direction::minimize;
        else
            throw ParseError("--direction must be max or min");
        if (constraint == "connected")
            spec.constraint = GlobalConstraint::connected;
        else if (constraint == "connected-co")
            spec.constraint = GlobalConstraint::connected_co;
        else if (constraint == "ac")
            spec.constraint = GlobalConstraint::tree;
        else if (constraint == "acyclic")
            spec.constraint = GlobalConstraint::forest;
        else
            throw ParseError("--constraint must be connected|connected-co|ac|acyclic");
        spec.name = "custom";
    }
    if (!terminals.empty()) {
        if (!spec.terminals)
            throw ParseError("--terminals only applies to node-weighted-steiner-tree");
        std::vector<int> terms;
        std::stringstream ss(terminals);
        std::string item;
        while (std::getline(ss, item, ',')) {
            int v = std::stoi(item);
            if (v < 1 || v > n) throw ParseError("terminal out of range: " + item);
            terms.push_back(v - 1);
        }
        spec.terminals = std::move(terms);
    }
    if (spec.terminals && spec.terminals->empty())
        throw ParseError("problem `" + spec.name + "` needs --terminals");
    return spec;
}

SolverOptions make_options(const std::string& pruning, bool streaming) {
    SolverOptions opts;
    opts.streaming_reduce = streaming;
    if (pruning == "always" || pruning.empty()) {
        opts.pruning = PruningMode::always;
    } else if (pruning.rfind("mim", 0) == 0) {
        opts.pruning = PruningMode::mim;
        auto colon = pruning.find(':');
        if (colon != std::string::npos)
            opts.mim_budget = std::stoull(pruning.substr(colon + 1));
    } else if (pruning == "rw") {
        opts.pruning = PruningMode::rw;
    } else if (pruning == "rwq") {
        opts.pruning = PruningMode::rwq;
    } else {
        throw ParseError("--pruning must be always|mim:BUDGET|rw|rwq");
    }
    if (const char* cap = std::getenv("NECSOLVE_CAP")) {
        opts.rep_cap = std::stoull(cap);
        opts.exact_class_cap = opts.rep_cap;
    }
    return opts;
}

json witness_json(const VertexSet& w) {
    json arr = json::array();
    for (int v : w.members()) arr.push_back(v + 1);
    return arr;
}

json widths_json(const CutWidthReport& report, bool with_mim) {
    json j;
    j["mw"] = report.mw;
    j["rw"] = report.rw;
    j["rwq"] = report.rwq;
    if (with_mim && report.mim)
        j["mim"] = *report.mim;
    else
        j["mim"] = nullptr;
    return j;
}

int run_solve(const CommonArgs& common, const ProblemSpec& spec,
              const SolverOptions& opts, bool trace, bool pretty, bool with_mim,
              uint64_t mim_budget) {
    Graph g = load_graph(common);
    RootedLayout layout = load_layout(g, common);
    CutWidthReport widths = cut_widths(layout, g, with_mim, mim_budget);

    auto start = std::chrono::steady_clock::now();
    SolveResult res = solve(g, layout, spec, opts);
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    if (trace) {
        std::cerr << "node\tentries\tmax_family\tmembers_in\tmembers_out\n";
        for (const TraceRow& row : res.trace.rows)
            std::cerr << row.node << "\t" << row.entries << "\t" << row.max_family
                      << "\t" << row.members_before << "\t" << row.members_after
                      << "\n";
    }

    json rec;
    rec["command"] = "solve";
    rec["problem"] = spec.name;
    rec["graph"] = {{"n", g.n()}, {"m", g.edge_count()}};
    rec["layout"] = widths_json(widths, with_mim);
    rec["status"] = res.feasible ? "ok" : "infeasible";
    if (res.feasible) {
        rec["weight"] = res.weight;
        rec["witness"] = witness_json(res.witness);
    } else {
        rec["weight"] = nullptr;
        rec["witness"] = nullptr;
    }
    rec["table"] = {{"max_entries", res.trace.max_entries},
                    {"max_family", res.trace.max_family}};
    std::cout << rec.dump() << "\n";

    if (pretty) {
        std::cout << "# " << spec.name << " on " << g.n() << " vertices, "
                  << g.edge_count() << " edges\n";
        if (res.feasible) {
            std::cout << "# optimum " << res.weight << ", witness {";
            bool first = true;
            for (int v : res.witness.members()) {
                std::cout << (first ? "" : ",") << v + 1;
                first = false;
            }
            std::cout << "}\n";
        } else {
            std::cout << "# infeasible\n";
        }
    }
    std::cerr << "solved in " << elapsed << " ms\n";
    return 0;
}

int run_verify(const std::string& problem, int max_n, int count, uint64_t seed,
               double fixed_p, int jobs) {
    if (max_n < 4 || max_n > 16) throw ParseError("--n must be in 4..16");
    if (count < 1) throw ParseError("--count must be positive");

    struct Row {
        json rec;
        bool match = false;
    };
    std::vector<Row> rows(count);

    auto run_one = [&](int i) {
        uint64_t inst_seed = seed * 1000003 + uint64_t(i);
        int n = 4 + int(inst_seed % uint64_t(max_n - 3));
        double p = fixed_p > 0 ? fixed_p : std::vector<double>{0.2, 0.35, 0.5}[i % 3];
        Graph g = testkit::gen_random(n, p, inst_seed, 1, 10);
        RootedLayout layout = generate_random(g, inst_seed + 1);

        ProblemSpec spec = catalog(problem);
        if (spec.terminals) {
            std::mt19937_64 trng(inst_seed + 2);
            int a = int(trng() % uint64_t(n)), b = int(trng() % uint64_t(n));
            spec.terminals = std::vector<int>{a, b};
        }

        SolveResult got = solve(g, layout, spec);
        testkit::OracleResult want = testkit::oracle_solve(g, spec);
        bool match = got.feasible == want.feasible &&
                     (!got.feasible || got.weight == want.weight);

        json rec;
        rec["command"] = "verify";
        rec["problem"] = problem;
        rec["instance"] = i;
        rec["seed"] = inst_seed;
        rec["n"] = n;
        rec["p"] = p;
        rec["solver"] = got.feasible ? json(got.weight) : json(nullptr);
        rec["oracle"] = want.feasible ? json(want.weight) : json(nullptr);
        rec["match"] = match;
        rows[i] = Row{std::move(rec), match};
    };

    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& th : pool) th.join();
    }

    int matched = 0;
    for (const Row& row : rows) {
        std::cout << row.rec.dump() << "\n";
        matched += row.match;
    }
    json summary;
    summary["command"] = "verify-summary";
    summary["problem"] = problem;
    summary["count"] = count;
    summary["matched"] = matched;
    std::cout << summary.dump() << "\n";
    std::cout << matched << "/" << count << " match oracle\n";
    return matched == count ? 0 : 1;
}

int run_nec_stats(const CommonArgs& common, uint32_t d) {
    Graph g = load_graph(common);
    RootedLayout layout = load_layout(g, common);
    CutWidthReport widths = cut_widths(layout, g);

    std::cout << "node\tsize\tmw\trw\trwq\tnec" << d << "_in\tnec" << d
              << "_co\tnecn_in\tnecn_co\tbound_mw\tbound_rwq\tbound_rw\tbound_necn\n";
    for (const auto& pc : widths.cuts) {
        const VertexSet& a = layout.below(pc.node);
        size_t nd_in = build_index(g, a, d).class_count();
        size_t nd_co = build_index(g, a.complement(), d).class_count();
        size_t nn_in = build_index(g, a, kExactDepth).class_count();
        size_t nn_co = build_index(g, a.complement(), kExactDepth).class_count();
        std::cout << pc.node << "\t" << pc.size << "\t" << pc.mw << "\t" << pc.rw
                  << "\t" << pc.rwq << "\t" << nd_in << "\t" << nd_co << "\t" << nn_in
                  << "\t" << nn_co << "\t" << sat_pow(d + 1, uint64_t(pc.mw)) << "\t"
                  << sat_pow(uint64_t(d) * pc.rwq + 1, uint64_t(pc.rwq)) << "\t"
                  << sat_pow(2, uint64_t(d) * pc.rw * pc.rw) << "\t"
                  << sat_pow(uint64_t(g.n()), uint64_t(pc.rwq)) << "\n";
    }
    return 0;
}

int run_layout(const CommonArgs& common, bool widths, bool with_mim,
               uint64_t mim_budget, const std::string& out_file) {
    Graph g = load_graph(common);
    RootedLayout layout = load_layout(g, common);
    std::string expr = layout.to_expression();
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) throw ParseError(out_file + ": cannot open for writing");
        out << expr << "\n";
    } else {
        std::cout << expr << "\n";
    }
    if (widths) {
        CutWidthReport report = cut_widths(layout, g, with_mim, mim_budget);
        json rec;
        rec["command"] = "layout-widths";
        rec["widths"] = widths_json(report, with_mim);
        std::cout << rec.dump() << "\n";
    }
    return 0;
}

int run_gen(const std::string& family, int n, int k, int t, int rows, int cols,
            double p, uint64_t seed, int64_t min_w, int64_t max_w,
            const std::string& out_file) {
    Graph g;
    if (family == "path") {
        g = testkit::gen_path(n);
    } else if (family == "cycle") {
        g = testkit::gen_cycle(n);
    } else if (family == "complete") {
        g = testkit::gen_complete(n);
    } else if (family == "grid") {
        g = testkit::gen_grid(rows, cols);
    } else if (family == "random") {
        g = testkit::gen_random(n, p, seed, min_w, max_w);
    } else if (family == "hk") {
        g = testkit::gen_hk(k, t).g;
    } else {
        throw ParseError("unknown family `" + family +
                         "`; expected path|cycle|grid|complete|random|hk");
    }
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) throw ParseError(out_file + ": cannot open for writing");
        write_graph(out, g);
    } else {
        write_graph(std::cout, g);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for connectivity- and acyclicity-constrained "
                 "domination, Max Cut, and Maximum Minimal Cut over rooted "
                 "layouts"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string problem, sigma, rho, direction = "min", constraint, terminals;
    std::string pruning = "always";
    bool trace = false, pretty = false, streaming = false;
    bool widths = false, with_mim = false;
    uint64_t mim_budget = 1'000'000;
    std::string out_file;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--graph", common.graph_file, "graph file")->required();
        cmd->add_option("--layout", common.layout_file, "layout expression file");
        cmd->add_option("--layout-gen", common.layout_gen,
                        "linear|random|greedy:d (default linear)");
        cmd->add_option("--seed", common.seed, "seed for generated layouts");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance");
    add_common(solve_cmd);
    solve_cmd->add_option("--problem", problem, "catalog problem name");
    solve_cmd->add_option("--sigma", sigma, "finite:... or cofinite:...");
    solve_cmd->add_option("--rho", rho, "finite:... or cofinite:...");
    solve_cmd->add_option("--direction", direction, "max|min");
    solve_cmd->add_option("--constraint", constraint,
                          "connected|connected-co|ac|acyclic");
    solve_cmd->add_option("--terminals", terminals, "1-indexed, comma separated");
    solve_cmd->add_option("--pruning", pruning, "always|mim:BUDGET|rw|rwq");
    solve_cmd->add_flag("--trace", trace, "dump per-node table sizes to stderr");
    solve_cmd->add_flag("--pretty", pretty, "append a human-readable summary");
    solve_cmd->add_flag("--streaming-reduce", streaming,
                        "reduce oversized entries during accumulation");
    solve_cmd->add_flag("--mim", with_mim, "also compute mim width");
    solve_cmd->add_option("--mim-budget", mim_budget, "search budget for mim");

    std::string v_problem;
    int v_n = 10, v_count = 50, v_jobs = 1;
    uint64_t v_seed = 1;
    double v_p = -1;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "compare the solver against the oracle");
    verify_cmd->add_option("--problem", v_problem, "catalog problem name")->required();
    verify_cmd->add_option("--n", v_n, "maximum vertex count (4..16)");
    verify_cmd->add_option("--count", v_count, "number of instances");
    verify_cmd->add_option("--seed", v_seed, "master seed");
    verify_cmd->add_option("--p", v_p, "fixed edge probability (default cycles)");
    verify_cmd->add_option("--jobs", v_jobs, "worker parallelism (default 1)");

    uint32_t stats_d = 1;
    CLI::App* stats_cmd =
        app.add_subcommand("nec-stats", "per-cut class counts and width bounds");
    add_common(stats_cmd);
    stats_cmd->add_option("--d", stats_d, "equivalence depth");

    CLI::App* layout_cmd =
        app.add_subcommand("layout", "emit, validate, and measure a layout");
    add_common(layout_cmd);
    layout_cmd->add_flag("--widths", widths, "also print aggregate widths");
    layout_cmd->add_flag("--mim", with_mim, "include mim in the width report");
    layout_cmd->add_option("--mim-budget", mim_budget, "search budget for mim");
    layout_cmd->add_option("--out", out_file, "write the expression to a file");

    std::string g_family;
    int g_n = 8, g_k = 1, g_t = 1, g_rows = 2, g_cols = 3;
    double g_p = 0.3;
    uint64_t g_seed = 1;
    int64_t g_minw = 1, g_maxw = 1;
    CLI::App* gen_cmd = app.add_subcommand("gen", "emit instance graph files");
    gen_cmd->add_option("--family", g_family, "path|cycle|grid|complete|random|hk")
        ->required();
    gen_cmd->add_option("--n", g_n, "vertex count");
    gen_cmd->add_option("--k", g_k, "hard-family level");
    gen_cmd->add_option("--t", g_t, "hard-family clone multiplicity");
    gen_cmd->add_option("--rows", g_rows, "grid rows");
    gen_cmd->add_option("--cols", g_cols, "grid columns");
    gen_cmd->add_option("--p", g_p, "edge probability");
    gen_cmd->add_option("--seed", g_seed, "random seed");
    gen_cmd->add_option("--min-weight", g_minw, "minimum vertex weight");
    gen_cmd->add_option("--max-weight", g_maxw, "maximum vertex weight");
    gen_cmd->add_option("--out", out_file, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (solve_cmd->parsed()) {
            Graph g = load_graph(common);
            ProblemSpec spec = resolve_problem(problem, sigma, rho, direction,
                                               constraint, terminals, g.n());
            SolverOptions opts = make_options(pruning, streaming);
            return run_solve(common, spec, opts, trace, pretty, with_mim, mim_budget);
        }
        if (verify_cmd->parsed())
            return run_verify(v_problem, v_n, v_count, v_seed, v_p, v_jobs);
        if (stats_cmd->parsed()) return run_nec_stats(common, stats_d);
        if (layout_cmd->parsed())
            return run_layout(common, widths, with_mim, mim_budget, out_file);
        if (gen_cmd->parsed())
            return run_gen(g_family, g_n, g_k, g_t, g_rows, g_cols, g_p, g_seed,
                           g_minw, g_maxw, out_file);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
