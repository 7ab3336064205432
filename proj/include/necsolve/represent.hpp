#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "necsolve/gf2.hpp"
#include "necsolve/graph.hpp"
#include "necsolve/nec.hpp"

namespace necsolve {

/// Partial solution with its accumulated weight.
struct Member {
    VertexSet set;
    int64_t weight = 0;
};

using WeightedFamily = std::vector<Member>;

/// All pairwise unions with summed weights; empty if either side is empty.
/// The two sides must live on disjoint vertex sets.
WeightedFamily merge(const WeightedFamily& a, const WeightedFamily& b);

/// Removes duplicate sets, keeping the first occurrence.
void dedupe(WeightedFamily& fam);

/// Connectivity matrix of a family against ordered pairs of depth-1 co-side
/// representatives: row X has a 1 in column (r1, r2) iff every component of
/// G[X] avoids r1's neighborhood or r2's neighborhood. Column order is
/// row-major over (r1 index, r2 index).
gf2::BitMatrix connectivity_matrix(const Graph& g, const WeightedFamily& fam,
                                   const NeighborClassIndex& co1);

/// Keeps a subset of fam that yields the same best connected completion for
/// every co-side set in r_prime's depth-1 class. All members must share one
/// depth-1 class over their side. Output size is at most nec_1 squared
/// (one extra slot for the empty member in the detached branch).
WeightedFamily reduce(const Graph& g, const WeightedFamily& fam,
                      const VertexSet& r_prime, const NeighborClassIndex& co1,
                      Direction dir);

/// Two-sided variant for minimal cuts: keeps a subset preserving the best
/// completion to a minimal cut for every co-side set matching the r_y /
/// r_ybar depth-1 classes. Members must share one exact-mode class; weights
/// must equal the member's internal cut value. Output at most nec_1^4.
WeightedFamily reduce_star(const Graph& g, const VertexSet& vx,
                           const WeightedFamily& fam, const VertexSet& r_y,
                           const VertexSet& r_ybar,
                           const NeighborClassIndex& co1);

/// One join tuple of the table dynamic programming: indices of the child
/// classes, the co-side class, and the derived parent / co-child classes.
struct CompatTuple {
    uint32_t a, b, r_prime;   // enumerated
    uint32_t r, a_prime, b_prime;  // derived
};

/// Emits every (A, B, R') triple over the child and co-side representative
/// sets with the derived R = rep(A u B), A' = rep(R' u B), B' = rep(R' u A).
/// Exactly |Rep_a| * |Rep_b| * |Rep_co_x| tuples, in index order.
void enumerate_compatible(const NeighborClassIndex& idx_a,
                          const NeighborClassIndex& idx_b,
                          const NeighborClassIndex& idx_co_a,
                          const NeighborClassIndex& idx_co_b,
                          const NeighborClassIndex& idx_x,
                          const NeighborClassIndex& idx_co_x,
                          const std::function<void(const CompatTuple&)>& emit);

}  // namespace necsolve
