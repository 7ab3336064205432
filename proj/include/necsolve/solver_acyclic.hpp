#pragma once

#include <optional>

#include "necsolve/solver.hpp"

namespace necsolve {

/// Drops members that can never complete to a tree with any completion in
/// r_prime's depth-2 class: non-forests, members with two high-degree-
/// toward-r_prime vertices sharing an outside neighborhood, and, when a
/// bound is supplied, members whose high-degree part exceeds it.
WeightedFamily filter_important(const Graph& g, const VertexSet& vx,
                                const WeightedFamily& fam, const VertexSet& r_prime,
                                std::optional<int> size_bound_2x = std::nullopt);

/// Tree-completion analogue of reduce: filters unimportant members, splits
/// the survivors into consistent parts (same exact signature of the
/// high-degree part toward the co-side, same edge/size balance), and reduces
/// each part independently. parts_out, when given, receives the part count.
WeightedFamily reduce_acy(const Graph& g, const VertexSet& vx,
                          const WeightedFamily& fam, const VertexSet& r_prime,
                          const NeighborClassIndex& side_idx,
                          const NeighborClassIndex& co1, Direction dir,
                          std::optional<int> size_bound_2x = std::nullopt,
                          int* parts_out = nullptr);

}  // namespace necsolve
