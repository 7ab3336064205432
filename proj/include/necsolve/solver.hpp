#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "necsolve/layout.hpp"
#include "necsolve/problem.hpp"
#include "necsolve/represent.hpp"

namespace necsolve {

enum class PruningMode { always, mim, rw, rwq };

struct SolverOptions {
    size_t rep_cap = 5'000'000;         // representatives per cut
    size_t exact_class_cap = 2'000'000; // exact-mode classes per cut
    bool streaming_reduce = false;      // reduce entries early past 4*nec_1^2
    PruningMode pruning = PruningMode::always;
    uint64_t mim_budget = 1'000'000;
    bool check_invariants = false;      // re-verify table entries after reduce
    size_t mmc_reduce_trigger = 64;     // reduce_star entries only past this size
};

struct TraceRow {
    int node = -1;
    size_t entries = 0;
    size_t max_family = 0;
    size_t members_before = 0;
    size_t members_after = 0;
};

struct SolveTrace {
    std::vector<TraceRow> rows;
    size_t max_entries = 0;
    size_t max_family = 0;
    int tilde_parts_max = 0;  // largest consistent-part split seen (acyclic)
    int dp_layout_mw = -1;    // module-width of the layout the DP ran on
    int dp_graph_n = 0;       // vertex count of the graph the DP ran on
};

struct SolveResult {
    bool feasible = false;
    int64_t weight = 0;
    VertexSet witness;
    SolveTrace trace;
};

SolveResult solve_connected(const Graph& g, const RootedLayout& layout,
                            const ProblemSpec& spec, const SolverOptions& opts = {});

SolveResult solve_connected_co(const Graph& g, const RootedLayout& layout,
                               const ProblemSpec& spec, const SolverOptions& opts = {});

SolveResult solve_ac(const Graph& g, const RootedLayout& layout,
                     const ProblemSpec& spec, const SolverOptions& opts = {});

/// Augmented graph turning forest solutions into tree solutions: a pendant
/// clone layer plus an apex tied to every clone.
struct StarGraph {
    Graph g;              // 2n+1 vertices: originals, clones, apex
    RootedLayout layout;  // original leaves split into (v, clone) pairs
    int apex = -1;
    std::vector<int> clone;     // clone[v] = clone vertex of v
    std::vector<char> core;     // star-layout nodes the DP visits
    std::vector<char> base;     // core nodes evaluated by direct enumeration
};

StarGraph build_star(const Graph& g, const RootedLayout& layout);

SolveResult solve_acyclic(const Graph& g, const RootedLayout& layout,
                          const ProblemSpec& spec, const SolverOptions& opts = {});

SolveResult solve_max_cut(const Graph& g, const RootedLayout& layout,
                          const SolverOptions& opts = {});

SolveResult solve_max_minimal_cut(const Graph& g, const RootedLayout& layout,
                                  const SolverOptions& opts = {});

/// Dispatches on the problem's kind and constraint; applies complement
/// reporting for the feedback-vertex-set alias.
SolveResult solve(const Graph& g, const RootedLayout& layout,
                  const ProblemSpec& spec, const SolverOptions& opts = {});

}  // namespace necsolve
