#include <algorithm>
#include <map>

#include "necsolve/solver_acyclic.hpp"
#include "solver_internal.hpp"

namespace necsolve {

using detail::Table;
using detail::key2;

namespace {

VertexSet two_plus_part(const Graph& g, const VertexSet& x, const VertexSet& r_prime) {
    VertexSet out(g.n());
    for (int v = x.first(); v >= 0; v = x.next(v))
        if (g.neighbors(v).intersection_count(r_prime) >= 2) out.set(v);
    return out;
}

}  // namespace

WeightedFamily filter_important(const Graph& g, const VertexSet& vx,
                                const WeightedFamily& fam, const VertexSet& r_prime,
                                std::optional<int> size_bound_2x) {
    VertexSet co = vx.complement();
    WeightedFamily out;
    for (const Member& m : fam) {
        if (!is_forest(g, m.set)) continue;
        VertexSet two_plus = two_plus_part(g, m.set, r_prime);
        if (size_bound_2x && two_plus.count() > *size_bound_2x) continue;
        // Two such vertices with the same outside neighborhood would close a
        // four-cycle through any completion.
        bool twin = false;
        std::vector<VertexSet> seen;
        for (int v = two_plus.first(); v >= 0 && !twin; v = two_plus.next(v)) {
            VertexSet nb = g.neighbors(v) & co;
            for (const VertexSet& other : seen)
                if (other == nb) {
                    twin = true;
                    break;
                }
            seen.push_back(std::move(nb));
        }
        if (twin) continue;
        out.push_back(m);
    }
    return out;
}

WeightedFamily reduce_acy(const Graph& g, const VertexSet& vx,
                          const WeightedFamily& fam, const VertexSet& r_prime,
                          const NeighborClassIndex& side_idx,
                          const NeighborClassIndex& co1, Direction dir,
                          std::optional<int> size_bound_2x, int* parts_out) {
    if (parts_out) *parts_out = 0;
    WeightedFamily survivors = filter_important(g, vx, fam, r_prime, size_bound_2x);
    if (survivors.empty()) return {};

    // Part key: exact counts of the high-degree part toward the co-side,
    // plus |E(G[X])| - |X^0 u X^2+| shifted to stay non-negative.
    struct PartKey {
        std::vector<uint16_t> counts;
        int balance;
        bool operator<(const PartKey& o) const {
            if (balance != o.balance) return balance < o.balance;
            return counts < o.counts;
        }
    };
    std::map<PartKey, size_t> part_of;
    std::vector<WeightedFamily> parts;
    for (const Member& m : survivors) {
        VertexSet two_plus = two_plus_part(g, m.set, r_prime);
        VertexSet one(g.n());
        for (int v = m.set.first(); v >= 0; v = m.set.next(v))
            if (g.neighbors(v).intersection_count(r_prime) == 1) one.set(v);
        PartKey key;
        key.counts = side_idx.count_vector(two_plus);
        key.balance = edges_within(g, m.set) - (m.set.count() - one.count());
        auto [it, inserted] = part_of.try_emplace(key, parts.size());
        if (inserted) parts.emplace_back();
        parts[it->second].push_back(m);
    }
    if (parts_out) *parts_out = int(parts.size());

    WeightedFamily out;
    for (const WeightedFamily& part : parts) {
        WeightedFamily reduced = reduce(g, part, r_prime, co1, dir);
        out.insert(out.end(), reduced.begin(), reduced.end());
    }
    return out;
}

namespace {

struct NodeIndexes {
    NeighborClassIndex in_d, co_d, co_1;
};

NodeIndexes build_one(const Graph& g, const VertexSet& a, uint32_t d,
                      const SolverOptions& opts) {
    NodeIndexes ni;
    ni.in_d = build_index(g, a, d, opts.rep_cap);
    ni.co_d = build_index(g, a.complement(), d, opts.rep_cap);
    ni.co_1 = d == 1 ? ni.co_d : build_index(g, a.complement(), 1, opts.rep_cap);
    return ni;
}

/// Per-cut cap on the high-degree part, per the selected pruning mode;
/// nullopt means only the parameter-free filters apply.
std::optional<int> pruning_bound(const Graph& g, const VertexSet& a,
                                 const SolverOptions& opts) {
    switch (opts.pruning) {
        case PruningMode::always:
            return std::nullopt;
        case PruningMode::mim: {
            auto mim = max_induced_matching(g, a, opts.mim_budget);
            if (!mim) return std::nullopt;  // budget exceeded, degrade gracefully
            return 2 * *mim;
        }
        case PruningMode::rw:
        case PruningMode::rwq: {
            VertexSet co = a.complement();
            std::vector<int> cols = co.members();
            std::vector<VertexSet> rows;
            for (int v = a.first(); v >= 0; v = a.next(v))
                rows.push_back(g.neighbors(v) & co);
            std::vector<std::vector<int>> m01;
            std::vector<std::vector<int64_t>> m64;
            for (const auto& r : rows) {
                std::vector<int> r01(cols.size());
                std::vector<int64_t> r64(cols.size());
                for (size_t j = 0; j < cols.size(); ++j)
                    r01[j] = r64[j] = r.test(cols[j]) ? 1 : 0;
                m01.push_back(std::move(r01));
                m64.push_back(std::move(r64));
            }
            if (cols.empty()) return 0;
            return 2 * (opts.pruning == PruningMode::rw ? gf2::rank_gf2(m01)
                                                        : gf2::rank_rational(m64));
        }
    }
    return std::nullopt;
}

/// The shared bottom-up loop: base nodes get directly enumerated tables via
/// `base_table`, internal nodes join children and compact with reduce_acy.
/// `is_base` marks nodes whose tables come from base_table; nodes outside
/// the core (never both) are skipped entirely.
SolveResult run_ac_dp(const Graph& g, const RootedLayout& layout,
                      const ProblemSpec& spec, const SolverOptions& opts,
                      const std::vector<char>& core, const std::vector<char>& base,
                      const std::function<void(int, const NodeIndexes&, Table&)>& base_table) {
    uint32_t d = spec.dp_depth();
    std::vector<NodeIndexes> idx(layout.node_count());
    std::vector<std::optional<int>> bound(layout.node_count());
    for (int x : layout.post_order()) {
        if (!core[x]) continue;
        idx[x] = build_one(g, layout.below(x), d, opts);
        bound[x] = pruning_bound(g, layout.below(x), opts);
    }

    std::vector<Table> tab(layout.node_count());
    SolveResult result;
    result.trace.dp_graph_n = g.n();

    for (int x : layout.post_order()) {
        if (!core[x]) continue;
        const NodeIndexes& ni = idx[x];
        size_t members_before = 0;

        if (base[x]) {
            base_table(x, ni, tab[x]);
            members_before = tab[x].size();
        } else {
            int a = layout.node(x).left, b = layout.node(x).right;
            std::vector<char> live_a(idx[a].in_d.class_count(), 0);
            std::vector<char> live_b(idx[b].in_d.class_count(), 0);
            for (const auto& [k, fam] : tab[a]) live_a[detail::key2_r(k)] = 1;
            for (const auto& [k, fam] : tab[b]) live_b[detail::key2_r(k)] = 1;

            Table acc;
            enumerate_compatible(
                idx[a].in_d, idx[b].in_d, idx[a].co_d, idx[b].co_d, ni.in_d,
                ni.co_d, [&](const CompatTuple& t) {
                    if (!live_a[t.a] || !live_b[t.b]) return;
                    auto ita = tab[a].find(key2(t.a, t.a_prime));
                    if (ita == tab[a].end()) return;
                    auto itb = tab[b].find(key2(t.b, t.b_prime));
                    if (itb == tab[b].end()) return;
                    WeightedFamily joined = merge(ita->second, itb->second);
                    WeightedFamily& dst = acc[key2(t.r, t.r_prime)];
                    dst.insert(dst.end(), joined.begin(), joined.end());
                });

            for (uint64_t k : detail::sorted_keys(acc)) {
                WeightedFamily fam = std::move(acc[k]);
                members_before += fam.size();
                dedupe(fam);
                int parts = 0;
                WeightedFamily reduced =
                    reduce_acy(g, layout.below(x), fam, ni.co_d.rep(detail::key2_rp(k)),
                               ni.in_d, ni.co_1, spec.direction, bound[x], &parts);
                result.trace.tilde_parts_max =
                    std::max(result.trace.tilde_parts_max, parts);
                if (!reduced.empty()) tab[x][k] = std::move(reduced);
            }
            tab[a].clear();
            tab[b].clear();
        }
        detail::record_trace(result.trace, x, tab[x], members_before);
    }

    auto it = tab[layout.root()].find(key2(0, 0));
    if (it != tab[layout.root()].end()) {
        bool found = false;
        for (const Member& m : it->second) {
            if (!is_tree(g, m.set)) continue;
            bool better = spec.direction == Direction::maximize
                              ? m.weight > result.weight
                              : m.weight < result.weight;
            if (!found || better) {
                result.feasible = true;
                result.weight = m.weight;
                result.witness = m.set;
                found = true;
            }
        }
    }
    return result;
}

}  // namespace

SolveResult solve_ac(const Graph& g, const RootedLayout& layout,
                     const ProblemSpec& spec, const SolverOptions& opts) {
    uint32_t d = spec.dp_depth();
    std::vector<char> core(layout.node_count(), 1);
    std::vector<char> base(layout.node_count(), 0);
    for (int x : layout.post_order())
        if (layout.is_leaf(x)) base[x] = 1;

    auto base_table = [&](int x, const NodeIndexes& ni, Table& t) {
        int v = layout.node(x).vertex;
        for (uint32_t rp = 0; rp < ni.co_d.class_count(); ++rp) {
            uint16_t ext = detail::capped_count(g, v, ni.co_d.rep(rp), d);
            for (int take = 0; take <= 1; ++take) {
                VertexSet s(g.n());
                if (take) s.set(v);
                if (!(take ? spec.sigma : spec.rho).contains(std::min<uint32_t>(ext, d)))
                    continue;
                uint32_t r = ni.in_d.rep_of(s);
                t[key2(r, rp)].push_back(Member{s, take ? g.weight(v) : 0});
            }
        }
    };

    SolveResult result = run_ac_dp(g, layout, spec, opts, core, base, base_table);
    result.trace.dp_layout_mw = cut_widths(layout, g).mw;
    if (result.feasible) {
        if (!is_tree(g, result.witness) ||
            !dominates(g, spec.sigma, spec.rho, g.all_vertices(), result.witness))
            throw std::logic_error("solve_ac: certificate check failed");
    }
    return result;
}

StarGraph build_star(const Graph& g, const RootedLayout& layout) {
    int n = g.n();
    StarGraph star;
    star.g = Graph(2 * n + 1);
    star.apex = 2 * n;
    star.clone.resize(n);
    for (int v = 0; v < n; ++v) {
        star.clone[v] = n + v;
        star.g.set_weight(v, g.weight(v));
        star.g.set_weight(n + v, 0);
        star.g.add_edge(v, n + v);
        star.g.add_edge(star.apex, n + v);
    }
    star.g.set_weight(star.apex, 0);
    for (int u = 0; u < n; ++u)
        for (int v = g.neighbors(u).next(u); v >= 0; v = g.neighbors(u).next(v))
            star.g.add_edge(u, v);

    // Every original node survives; each original leaf gains a (v, clone)
    // pair below it and the new root gains the apex leaf.
    std::vector<RootedLayout::Node> nodes;
    std::vector<char> core, base;
    auto push = [&](RootedLayout::Node nd, bool in_core, bool is_base) {
        nodes.push_back(nd);
        core.push_back(in_core);
        base.push_back(is_base);
        return int(nodes.size()) - 1;
    };
    std::vector<int> remap(layout.node_count(), -1);
    for (int x : layout.post_order()) {
        const auto& nd = layout.node(x);
        if (layout.is_leaf(x)) {
            RootedLayout::Node la, lb;
            la.vertex = nd.vertex;
            lb.vertex = star.clone[nd.vertex];
            int ia = push(la, false, false);
            int ib = push(lb, false, false);
            RootedLayout::Node pair;
            pair.left = ia;
            pair.right = ib;
            remap[x] = push(pair, true, true);
        } else {
            RootedLayout::Node internal;
            internal.left = remap[nd.left];
            internal.right = remap[nd.right];
            remap[x] = push(internal, true, false);
        }
    }
    RootedLayout::Node apex_leaf;
    apex_leaf.vertex = star.apex;
    int ar = push(apex_leaf, true, true);
    RootedLayout::Node new_root;
    new_root.left = remap[layout.root()];
    new_root.right = ar;
    int root = push(new_root, true, false);

    star.layout = RootedLayout(std::move(nodes), root);
    star.layout.finalize(2 * n + 1);
    star.core = std::move(core);
    star.base = std::move(base);
    return star;
}

SolveResult solve_acyclic(const Graph& g, const RootedLayout& layout,
                          const ProblemSpec& spec, const SolverOptions& opts) {
    StarGraph star = build_star(g, layout);
    const Graph& gs = star.g;
    uint32_t d = spec.dp_depth();
    VertexSet originals(gs.n());
    for (int v = 0; v < g.n(); ++v) originals.set(v);

    // Domination is restricted to original vertices: clones and the apex
    // only carry the connectivity of the forest components.
    auto base_table = [&](int x, const NodeIndexes& ni, Table& t) {
        const VertexSet& vx = star.layout.below(x);
        VertexSet dom_over = vx & originals;
        std::vector<int> verts = vx.members();
        for (uint32_t rp = 0; rp < ni.co_d.class_count(); ++rp) {
            VertexSet rp_orig = ni.co_d.rep(rp) & originals;
            std::vector<uint16_t> ext(gs.n(), 0);
            for (int v = dom_over.first(); v >= 0; v = dom_over.next(v))
                ext[v] = detail::capped_count(gs, v, rp_orig, d);
            for (uint32_t mask = 0; mask < (uint32_t{1} << verts.size()); ++mask) {
                VertexSet s(gs.n());
                for (size_t i = 0; i < verts.size(); ++i)
                    if (mask & (uint32_t{1} << i)) s.set(verts[i]);
                if (!dominates_locally(gs, d, spec.sigma, spec.rho, dom_over,
                                       s & originals, ext))
                    continue;
                uint32_t r = ni.in_d.rep_of(s);
                t[key2(r, rp)].push_back(Member{s, gs.weight_of(s)});
            }
        }
    };

    SolveResult inner =
        run_ac_dp(gs, star.layout, spec, opts, star.core, star.base, base_table);
    inner.trace.dp_layout_mw = cut_widths(star.layout, gs).mw;

    SolveResult result;
    result.trace = inner.trace;
    if (inner.feasible) {
        result.feasible = true;
        result.witness = (inner.witness & originals);
        // Project back to the original universe.
        VertexSet w(g.n());
        for (int v = result.witness.first(); v >= 0; v = result.witness.next(v))
            w.set(v);
        result.witness = w;
        result.weight = inner.weight;
        if (!is_forest(g, result.witness) ||
            !dominates(g, spec.sigma, spec.rho, g.all_vertices(), result.witness) ||
            g.weight_of(result.witness) != result.weight)
            throw std::logic_error("solve_acyclic: certificate check failed");
    }
    return result;
}

}  // namespace necsolve
