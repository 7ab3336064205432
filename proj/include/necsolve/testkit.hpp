#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "necsolve/gf2.hpp"
#include "necsolve/nec.hpp"
#include "necsolve/problem.hpp"

namespace necsolve::testkit {

/// Exhaustive-enumeration result: the optimum and every witness attaining it.
struct OracleResult {
    bool feasible = false;
    int64_t weight = 0;
    std::vector<VertexSet> witnesses;
};

/// Direct transcription of the problem definitions over all 2^n subsets.
/// No dynamic programming anywhere; the trusted base of the solver tests.
OracleResult oracle_solve(const Graph& g, const ProblemSpec& spec, int cap = 16);

enum class BestMode { connected, tree, minimal_cut };

/// Optimum weight over members whose union with y is connected / a tree /
/// a minimal cut; nullopt when no member qualifies.
std::optional<int64_t> oracle_best(const Graph& g,
                                   const std::vector<std::pair<VertexSet, int64_t>>& fam,
                                   const VertexSet& y, BestMode mode,
                                   Direction dir = Direction::maximize);

/// Bipartite hard family: one side indexes the subsets of {1..k}, the other
/// side too, with an edge when the index intersection has even size; the
/// first side is cloned t times. The distinguished side keeps every clone.
struct HkInstance {
    Graph g;
    VertexSet a_star;
    int k = 0;
    int t = 1;
};

HkInstance gen_hk(int k, int t);

/// Adjacency matrix of the uncloned bipartite family at level k (2^k x 2^k).
std::vector<std::vector<int64_t>> hk_matrix(int k);

Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_grid(int rows, int cols);
Graph gen_complete(int n);
Graph gen_random(int n, double p, uint64_t seed, int64_t min_weight = 1,
                 int64_t max_weight = 1);

/// Split matrix of the proof-side identity: entry ((r1, r2), y) is 1 iff
/// some consistent cut of y puts y's smallest vertex into a part matching
/// r1 with the rest matching r2. Columns follow the order of ys.
gf2::BitMatrix cbar_matrix(const Graph& g, const std::vector<VertexSet>& ys,
                           const NeighborClassIndex& co1);

}  // namespace necsolve::testkit
