#include <algorithm>

#include "necsolve/solver.hpp"
#include "solver_internal.hpp"

namespace necsolve {

using detail::Table;
using detail::key2;
using detail::key4;

namespace {

struct NodeIndexes {
    NeighborClassIndex in_d, co_d, co_1;
};

std::vector<NodeIndexes> build_node_indexes(const Graph& g, const RootedLayout& layout,
                                            uint32_t d, const SolverOptions& opts) {
    std::vector<NodeIndexes> idx(layout.node_count());
    for (int x : layout.post_order()) {
        const VertexSet& a = layout.below(x);
        idx[x].in_d = build_index(g, a, d, opts.rep_cap);
        idx[x].co_d = build_index(g, a.complement(), d, opts.rep_cap);
        idx[x].co_1 = d == 1 ? idx[x].co_d
                             : build_index(g, a.complement(), 1, opts.rep_cap);
    }
    return idx;
}

void check_entry_invariant(const Graph& g, const ProblemSpec& spec, uint32_t d,
                           const NodeIndexes& ni, const VertexSet& vx, uint64_t key,
                           const WeightedFamily& fam) {
    size_t nec1 = ni.co_1.class_count();
    if (fam.size() > nec1 * nec1 + 1)  // +1: the empty member of the detached branch
        throw std::logic_error("table entry exceeds nec_1^2 after reduce");
    uint32_t r = detail::key2_r(key), rp = detail::key2_rp(key);
    const VertexSet& rp_set = ni.co_d.rep(rp);
    std::vector<uint16_t> ext(g.n(), 0);
    for (int v = vx.first(); v >= 0; v = vx.next(v))
        ext[v] = detail::capped_count(g, v, rp_set, d);
    for (const Member& m : fam) {
        if (ni.in_d.rep_of(m.set) != r)
            throw std::logic_error("table member in wrong class");
        if (!dominates_locally(g, d, spec.sigma, spec.rho, vx, m.set, ext))
            throw std::logic_error("table member fails local domination");
    }
}

}  // namespace

SolveResult solve_connected(const Graph& g, const RootedLayout& layout,
                            const ProblemSpec& spec, const SolverOptions& opts) {
    uint32_t d = spec.dp_depth();
    VertexSet terminals(g.n());
    if (spec.terminals)
        for (int t : *spec.terminals) terminals.set(t);

    std::vector<NodeIndexes> idx = build_node_indexes(g, layout, d, opts);
    std::vector<Table> tab(layout.node_count());
    SolveResult result;
    result.trace.dp_graph_n = g.n();

    for (int x : layout.post_order()) {
        const VertexSet& vx = layout.below(x);
        const NodeIndexes& ni = idx[x];
        size_t members_before = 0;

        if (layout.is_leaf(x)) {
            int v = layout.node(x).vertex;
            for (uint32_t rp = 0; rp < ni.co_d.class_count(); ++rp) {
                uint16_t ext = detail::capped_count(g, v, ni.co_d.rep(rp), d);
                for (int take = 0; take <= 1; ++take) {
                    if (!take && terminals.test(v)) continue;  // terminals are forced
                    VertexSet s(g.n());
                    if (take) s.set(v);
                    uint32_t c = std::min<uint32_t>(ext, d);
                    if (!(take ? spec.sigma : spec.rho).contains(c)) continue;
                    uint32_t r = ni.in_d.rep_of(s);
                    tab[x][key2(r, rp)].push_back(
                        Member{s, take ? g.weight(v) : 0});
                }
            }
            members_before = tab[x].size();
        } else {
            int a = layout.node(x).left, b = layout.node(x).right;
            std::vector<char> live_a(idx[a].in_d.class_count(), 0);
            std::vector<char> live_b(idx[b].in_d.class_count(), 0);
            for (const auto& [k, fam] : tab[a]) live_a[detail::key2_r(k)] = 1;
            for (const auto& [k, fam] : tab[b]) live_b[detail::key2_r(k)] = 1;

            Table acc;
            size_t nec1 = ni.co_1.class_count();
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
                    if (opts.streaming_reduce && dst.size() > 4 * nec1 * nec1) {
                        dedupe(dst);
                        dst = reduce(g, dst, ni.co_d.rep(t.r_prime), ni.co_1,
                                     spec.direction);
                    }
                });

            for (uint64_t k : detail::sorted_keys(acc)) {
                WeightedFamily fam = std::move(acc[k]);
                members_before += fam.size();
                dedupe(fam);
                WeightedFamily reduced = reduce(g, fam, ni.co_d.rep(detail::key2_rp(k)),
                                                ni.co_1, spec.direction);
                if (reduced.empty()) continue;
                if (opts.check_invariants)
                    check_entry_invariant(g, spec, d, ni, vx, k, reduced);
                tab[x][k] = std::move(reduced);
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
            if (!is_connected(g, m.set)) continue;
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
    if (result.feasible) {
        if (!is_connected(g, result.witness) ||
            !dominates(g, spec.sigma, spec.rho, g.all_vertices(), result.witness) ||
            !terminals.is_subset_of(result.witness))
            throw std::logic_error("solve_connected: certificate check failed");
        if (result.witness.count() == 0 || g.weight_of(result.witness) != result.weight)
            throw std::logic_error("solve_connected: witness weight mismatch");
    }
    return result;
}

SolveResult solve_connected_co(const Graph& g, const RootedLayout& layout,
                               const ProblemSpec& spec, const SolverOptions& opts) {
    uint32_t d = spec.dp_depth();
    std::vector<NodeIndexes> idx = build_node_indexes(g, layout, d, opts);
    // Depth-1 indexes on both sides track the connectivity of the solution
    // itself; the depth-d pair tracks the domination by its complement.
    std::vector<NeighborClassIndex> in_1(layout.node_count());
    for (int x : layout.post_order())
        in_1[x] = d == 1 ? idx[x].in_d
                         : build_index(g, layout.below(x), 1, opts.rep_cap);

    for (int x : layout.post_order()) {
        if (idx[x].in_d.class_count() >= 65536 || idx[x].co_d.class_count() >= 65536 ||
            in_1[x].class_count() >= 65536 || idx[x].co_1.class_count() >= 65536)
            throw ResourceCapError("co-solver: too many classes for packed keys");
    }

    std::vector<Table> tab(layout.node_count());
    SolveResult result;
    result.trace.dp_graph_n = g.n();

    for (int x : layout.post_order()) {
        const VertexSet& vx = layout.below(x);
        const NodeIndexes& ni = idx[x];
        size_t members_before = 0;

        if (layout.is_leaf(x)) {
            int v = layout.node(x).vertex;
            for (uint32_t rp = 0; rp < ni.co_d.class_count(); ++rp) {
                uint16_t ext = detail::capped_count(g, v, ni.co_d.rep(rp), d);
                for (int take = 0; take <= 1; ++take) {
                    VertexSet s(g.n());
                    if (take) s.set(v);
                    // The complement of the solution must dominate; at a leaf
                    // the complement within V_x is {v} minus the choice.
                    bool in_dom = !take;
                    if (!(in_dom ? spec.sigma : spec.rho).contains(std::min<uint32_t>(ext, d)))
                        continue;
                    uint32_t r = ni.in_d.rep_of(vx.minus(s));
                    uint32_t rbar = in_1[x].rep_of(s);
                    int64_t w = take ? g.weight(v) : 0;
                    for (uint32_t rbp = 0; rbp < ni.co_1.class_count(); ++rbp)
                        tab[x][key4(r, rp, rbar, rbp)].push_back(Member{s, w});
                }
            }
            members_before = tab[x].size();
        } else {
            int a = layout.node(x).left, b = layout.node(x).right;

            // Presence masks over key halves keep the tuple product sparse.
            auto presence = [](const Table& t, int shift, size_t nr, size_t nc) {
                std::vector<char> has(nr * nc, 0);
                for (const auto& [k, fam] : t) {
                    uint32_t hi = uint32_t(k >> (shift + 16)) & 0xffff;
                    uint32_t lo = uint32_t(k >> shift) & 0xffff;
                    has[hi * nc + lo] = 1;
                }
                return has;
            };
            auto dom_a = presence(tab[a], 32, idx[a].in_d.class_count(),
                                  idx[a].co_d.class_count());
            auto dom_b = presence(tab[b], 32, idx[b].in_d.class_count(),
                                  idx[b].co_d.class_count());
            auto con_a = presence(tab[a], 0, in_1[a].class_count(),
                                  idx[a].co_1.class_count());
            auto con_b = presence(tab[b], 0, in_1[b].class_count(),
                                  idx[b].co_1.class_count());

            std::vector<CompatTuple> dom_tuples, con_tuples;
            enumerate_compatible(idx[a].in_d, idx[b].in_d, idx[a].co_d,
                                 idx[b].co_d, ni.in_d, ni.co_d,
                                 [&](const CompatTuple& t) {
                                     if (dom_a[t.a * idx[a].co_d.class_count() + t.a_prime] &&
                                         dom_b[t.b * idx[b].co_d.class_count() + t.b_prime])
                                         dom_tuples.push_back(t);
                                 });
            enumerate_compatible(in_1[a], in_1[b], idx[a].co_1, idx[b].co_1,
                                 in_1[x], ni.co_1,
                                 [&](const CompatTuple& t) {
                                     if (con_a[t.a * idx[a].co_1.class_count() + t.a_prime] &&
                                         con_b[t.b * idx[b].co_1.class_count() + t.b_prime])
                                         con_tuples.push_back(t);
                                 });

            Table acc;
            for (const CompatTuple& td : dom_tuples) {
                for (const CompatTuple& tc : con_tuples) {
                    auto ita = tab[a].find(key4(td.a, td.a_prime, tc.a, tc.a_prime));
                    if (ita == tab[a].end()) continue;
                    auto itb = tab[b].find(key4(td.b, td.b_prime, tc.b, tc.b_prime));
                    if (itb == tab[b].end()) continue;
                    WeightedFamily joined = merge(ita->second, itb->second);
                    WeightedFamily& dst = acc[key4(td.r, td.r_prime, tc.r, tc.r_prime)];
                    dst.insert(dst.end(), joined.begin(), joined.end());
                }
            }

            for (uint64_t k : detail::sorted_keys(acc)) {
                WeightedFamily fam = std::move(acc[k]);
                members_before += fam.size();
                dedupe(fam);
                uint32_t rbp = uint32_t(k & 0xffff);
                WeightedFamily reduced =
                    reduce(g, fam, ni.co_1.rep(rbp), ni.co_1, spec.direction);
                if (!reduced.empty()) tab[x][k] = std::move(reduced);
            }
            tab[a].clear();
            tab[b].clear();
        }
        detail::record_trace(result.trace, x, tab[x], members_before);
    }

    auto it = tab[layout.root()].find(key4(0, 0, 0, 0));
    if (it != tab[layout.root()].end()) {
        bool found = false;
        for (const Member& m : it->second) {
            if (!is_connected(g, m.set)) continue;
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
    if (result.feasible) {
        VertexSet co = result.witness.complement();
        if (!is_connected(g, result.witness) ||
            !dominates(g, spec.sigma, spec.rho, g.all_vertices(), co))
            throw std::logic_error("solve_connected_co: certificate check failed");
    }
    return result;
}

SolveResult solve(const Graph& g, const RootedLayout& layout, const ProblemSpec& spec,
                  const SolverOptions& opts) {
    SolveResult res;
    switch (spec.kind) {
        case ProblemKind::max_cut:
            return solve_max_cut(g, layout, opts);
        case ProblemKind::max_min_cut:
            return solve_max_minimal_cut(g, layout, opts);
        case ProblemKind::sigma_rho:
            break;
    }
    switch (spec.constraint) {
        case GlobalConstraint::connected:
            res = solve_connected(g, layout, spec, opts);
            break;
        case GlobalConstraint::connected_co:
            res = solve_connected_co(g, layout, spec, opts);
            break;
        case GlobalConstraint::tree:
            res = solve_ac(g, layout, spec, opts);
            break;
        case GlobalConstraint::forest:
            res = solve_acyclic(g, layout, spec, opts);
            break;
        case GlobalConstraint::none:
            throw std::invalid_argument(
                "no solver for unconstrained problems; use the oracle");
    }
    if (res.feasible && spec.report_complement) {
        res.witness = res.witness.complement();
        res.weight = g.total_weight() - res.weight;
    }
    return res;
}

}  // namespace necsolve
