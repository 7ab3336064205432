#include "necsolve/testkit.hpp"

#include <random>
#include <stdexcept>

namespace necsolve::testkit {

namespace {

bool feasible_sigma_rho(const Graph& g, const ProblemSpec& spec, const VertexSet& x,
                        const VertexSet& terminals) {
    const VertexSet dom = spec.constraint == GlobalConstraint::connected_co
                              ? x.complement()
                              : x;
    if (!dominates(g, spec.sigma, spec.rho, g.all_vertices(), dom)) return false;
    switch (spec.constraint) {
        case GlobalConstraint::none:
            break;
        case GlobalConstraint::connected:
        case GlobalConstraint::connected_co:
            if (!is_connected(g, x)) return false;
            break;
        case GlobalConstraint::tree:
            if (!is_tree(g, x)) return false;
            break;
        case GlobalConstraint::forest:
            if (!is_forest(g, x)) return false;
            break;
    }
    return terminals.is_subset_of(x);
}

}  // namespace

OracleResult oracle_solve(const Graph& g, const ProblemSpec& spec, int cap) {
    if (g.n() > cap)
        throw std::invalid_argument("oracle_solve: graph larger than the cap");
    VertexSet terminals(g.n());
    if (spec.terminals)
        for (int t : *spec.terminals) terminals.set(t);

    OracleResult res;
    bool maximize = spec.direction == Direction::maximize;
    for (uint64_t mask = 0; mask < (uint64_t{1} << g.n()); ++mask) {
        VertexSet x(g.n());
        for (int v = 0; v < g.n(); ++v)
            if (mask & (uint64_t{1} << v)) x.set(v);

        int64_t value;
        if (spec.kind == ProblemKind::max_cut) {
            value = edges_between(g, x, x.complement());
        } else if (spec.kind == ProblemKind::max_min_cut) {
            if (!is_connected(g, x) || !is_connected(g, x.complement())) continue;
            value = edges_between(g, x, x.complement());
        } else {
            if (!feasible_sigma_rho(g, spec, x, terminals)) continue;
            value = g.weight_of(x);
        }

        if (!res.feasible || (maximize ? value > res.weight : value < res.weight)) {
            res.feasible = true;
            res.weight = value;
            res.witnesses.clear();
        }
        if (value == res.weight) res.witnesses.push_back(x);
    }
    if (res.feasible && spec.report_complement) {
        res.weight = g.total_weight() - res.weight;
        for (VertexSet& w : res.witnesses) w = w.complement();
    }
    return res;
}

std::optional<int64_t> oracle_best(const Graph& g,
                                   const std::vector<std::pair<VertexSet, int64_t>>& fam,
                                   const VertexSet& y, BestMode mode, Direction dir) {
    std::optional<int64_t> best;
    for (const auto& [x, w] : fam) {
        VertexSet u = x | y;
        bool ok = false;
        switch (mode) {
            case BestMode::connected:
                ok = is_connected(g, u);
                break;
            case BestMode::tree:
                ok = is_tree(g, u);
                break;
            case BestMode::minimal_cut:
                ok = is_connected(g, u) && is_connected(g, u.complement());
                break;
        }
        if (!ok) continue;
        if (!best || (dir == Direction::maximize ? w > *best : w < *best)) best = w;
    }
    return best;
}

HkInstance gen_hk(int k, int t) {
    if (k < 0 || k > 4 || t < 1)
        throw std::invalid_argument("gen_hk: need 0 <= k <= 4 and t >= 1");
    int side = 1 << k;  // subsets of {1..k}
    int n = side * (t + 1);
    HkInstance inst;
    inst.k = k;
    inst.t = t;
    inst.g = Graph(n);
    inst.a_star = VertexSet(n);
    // Clones of a_S occupy j*side + S; b_S sits at t*side + S.
    for (int j = 0; j < t; ++j)
        for (int s = 0; s < side; ++s) inst.a_star.set(j * side + s);
    for (int j = 0; j < t; ++j)
        for (int s = 0; s < side; ++s)
            for (int tt = 0; tt < side; ++tt)
                if (std::popcount(unsigned(s & tt)) % 2 == 0)
                    inst.g.add_edge(j * side + s, t * side + tt);
    return inst;
}

std::vector<std::vector<int64_t>> hk_matrix(int k) {
    int side = 1 << k;
    std::vector<std::vector<int64_t>> m(side, std::vector<int64_t>(side));
    for (int s = 0; s < side; ++s)
        for (int t = 0; t < side; ++t)
            m[s][t] = std::popcount(unsigned(s & t)) % 2 == 0 ? 1 : 0;
    return m;
}

Graph gen_path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph gen_cycle(int n) {
    Graph g = gen_path(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

Graph gen_grid(int rows, int cols) {
    Graph g(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
            if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
        }
    return g;
}

Graph gen_complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph gen_random(int n, double p, uint64_t seed, int64_t min_weight,
                 int64_t max_weight) {
    std::mt19937_64 rng(seed);
    const uint64_t threshold = uint64_t(p * double(~uint64_t{0}));
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng() <= threshold) g.add_edge(u, v);
    for (int v = 0; v < n; ++v)
        g.set_weight(v, min_weight + int64_t(rng() % uint64_t(max_weight - min_weight + 1)));
    return g;
}

gf2::BitMatrix cbar_matrix(const Graph& g, const std::vector<VertexSet>& ys,
                           const NeighborClassIndex& co1) {
    uint32_t m = uint32_t(co1.class_count());
    gf2::BitMatrix mat(int64_t(ys.size()));
    for (uint32_t r1 = 0; r1 < m; ++r1) {
        for (uint32_t r2 = 0; r2 < m; ++r2) {
            auto& row = mat.add_row(0, r1 * m + r2);
            for (size_t j = 0; j < ys.size(); ++j) {
                const VertexSet& y = ys[j];
                int anchor = y.first();
                if (anchor < 0) continue;  // empty completions carry no anchor
                for (const auto& [y1, y2] : consistent_cuts(g, y)) {
                    if (!y1.test(anchor)) continue;
                    if (co1.rep_of(y1) == r1 && co1.rep_of(y2) == r2) {
                        gf2::BitMatrix::set_bit(row.bits, int64_t(j));
                        break;
                    }
                }
            }
        }
    }
    return mat;
}

}  // namespace necsolve::testkit
