#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "necsolve/graph.hpp"

namespace necsolve {

/// Rooted binary layout: a rooted tree whose leaves biject to the graph's
/// vertices. Each node x carries the vertex set below it. Raw node arrays
/// may describe invalid shapes; validate() checks the invariants.
class RootedLayout {
public:
    struct Node {
        int left = -1;
        int right = -1;
        int vertex = -1;  // leaves only
        VertexSet below;  // filled by finalize()
    };

    RootedLayout() = default;
    RootedLayout(std::vector<Node> nodes, int root)
        : nodes_(std::move(nodes)), root_(root) {}

    int root() const { return root_; }
    int node_count() const { return int(nodes_.size()); }
    const Node& node(int x) const { return nodes_[x]; }
    bool is_leaf(int x) const { return nodes_[x].left < 0 && nodes_[x].right < 0; }
    const VertexSet& below(int x) const { return nodes_[x].below; }

    /// Node ids in post order (children before parents).
    std::vector<int> post_order() const;

    /// Computes the below sets; requires a structurally valid layout.
    void finalize(int n);

    /// `(x)` for a leaf holding 1-indexed vertex x, `(L R)` for an internal
    /// node; the whole expression is the root.
    static RootedLayout from_expression(const std::string& text);
    std::string to_expression() const;

private:
    std::vector<Node> nodes_;
    int root_ = -1;
};

struct LayoutValidation {
    bool ok = true;
    std::string message;
    int node = -1;
};

/// Confirms the structural invariants: every internal node has exactly two
/// children, the leaves biject onto the graph's vertices, and the node
/// array forms a single rooted tree.
LayoutValidation validate_layout(const RootedLayout& layout, const Graph& g);

struct CutWidthReport {
    struct PerNode {
        int node = -1;
        int size = 0;  // |V_x|
        int mw = 0;
        int rw = 0;
        int rwq = 0;
        std::optional<int> mim;
    };
    std::vector<PerNode> cuts;
    int mw = 0, rw = 0, rwq = 0;
    std::optional<int> mim;  // set only when every per-cut value was computed
};

/// Per-cut and aggregate widths. mw counts distinct rows of the cut matrix,
/// rw / rwq its rank over GF(2) / the rationals; mim is the maximum induced
/// matching across the cut, computed by branch and bound and left unset
/// when the search exceeds mim_budget nodes.
CutWidthReport cut_widths(const RootedLayout& layout, const Graph& g,
                          bool with_mim = false, uint64_t mim_budget = 1'000'000);

/// Maximum induced matching of G[a, complement(a)], or nullopt past budget.
std::optional<int> max_induced_matching(const Graph& g, const VertexSet& a,
                                        uint64_t budget);

RootedLayout generate_linear(const Graph& g, const std::vector<int>& order = {});
RootedLayout generate_random(const Graph& g, uint64_t seed);

/// Recursive bipartition choosing, among sampled bipartitions, one
/// minimizing the larger class count of the two sides at the given depth.
/// Ties break by lexicographic bitset value. No optimality claim.
RootedLayout generate_greedy_nec(const Graph& g, uint32_t depth, uint64_t seed);

}  // namespace necsolve
