#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "necsolve/bitset.hpp"

namespace necsolve {

/// Undirected graph with integer vertex weights. Adjacency is kept as one
/// bitset row per vertex; vertex index order is the fixed total order used
/// wherever a lexicographically smallest set is needed.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), adj_(n, VertexSet(n)), weight_(n, 1) {}

    int n() const { return n_; }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
        adj_[u].set(v);
        adj_[v].set(u);
    }

    bool has_edge(int u, int v) const { return adj_[u].test(v); }

    const VertexSet& neighbors(int v) const { return adj_[v]; }

    int degree(int v) const { return adj_[v].count(); }

    int edge_count() const {
        int m = 0;
        for (int v = 0; v < n_; ++v) m += degree(v);
        return m / 2;
    }

    int64_t weight(int v) const { return weight_[v]; }
    void set_weight(int v, int64_t w) { weight_[v] = w; }

    int64_t weight_of(const VertexSet& s) const {
        int64_t w = 0;
        for (int v = s.first(); v >= 0; v = s.next(v)) w += weight_[v];
        return w;
    }

    int64_t total_weight() const {
        int64_t w = 0;
        for (int64_t x : weight_) w += x;
        return w;
    }

    VertexSet all_vertices() const { return VertexSet::full(n_); }

    /// Union of neighborhoods of the members of s.
    VertexSet neighborhood(const VertexSet& s) const {
        VertexSet r(n_);
        for (int v = s.first(); v >= 0; v = s.next(v)) r |= adj_[v];
        return r;
    }

private:
    int n_ = 0;
    std::vector<VertexSet> adj_;
    std::vector<int64_t> weight_;
};

/// Components of the induced subgraph G[s], ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& s);

/// Empty sets are not connected (zero components, not one).
bool is_connected(const Graph& g, const VertexSet& s);
bool is_forest(const Graph& g, const VertexSet& s);
bool is_tree(const Graph& g, const VertexSet& s);

int edges_within(const Graph& g, const VertexSet& s);

/// Number of edges with one endpoint in x and the other in y.
/// x and y must be disjoint.
int edges_between(const Graph& g, const VertexSet& x, const VertexSet& y);

/// All ordered bipartitions (s1, s2) of s with no edge from s1 to s2.
/// Exponential in the number of components of G[s]; test-scale utility.
std::vector<std::pair<VertexSet, VertexSet>> consistent_cuts(const Graph& g,
                                                             const VertexSet& s);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Edge-list text format: `p <n> <m>` header, optional `w <v> <int>` weight
/// lines (default weight 1), `e <u> <v>` edge lines, vertices 1-indexed.
Graph read_graph(std::istream& in, const std::string& filename = "<input>");
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace necsolve
