#pragma once

#include <random>
#include <vector>

#include "necsolve/graph.hpp"
#include "necsolve/layout.hpp"
#include "necsolve/testkit.hpp"

namespace th {

using namespace necsolve;

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

// All subsets of s, in increasing mask order over s's members.
inline std::vector<VertexSet> subsets_of(const VertexSet& s) {
    std::vector<int> mem = s.members();
    std::vector<VertexSet> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << mem.size()); ++mask) {
        VertexSet x(s.universe());
        for (size_t i = 0; i < mem.size(); ++i)
            if (mask & (uint64_t{1} << i)) x.set(mem[i]);
        out.push_back(std::move(x));
    }
    return out;
}

inline VertexSet random_subset(const VertexSet& s, std::mt19937_64& rng) {
    VertexSet x(s.universe());
    for (int v = s.first(); v >= 0; v = s.next(v))
        if (rng() & 1) x.set(v);
    return x;
}

}  // namespace th
