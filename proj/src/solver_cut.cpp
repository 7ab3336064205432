#include <algorithm>

#include "necsolve/solver.hpp"
#include "solver_internal.hpp"

namespace necsolve {

using detail::Table;

namespace {

NeighborClassIndex exact_index(const Graph& g, const VertexSet& side, int node,
                               const SolverOptions& opts) {
    try {
        return build_index(g, side, kExactDepth, opts.exact_class_cap);
    } catch (const ResourceCapError& e) {
        throw ResourceCapError("class explosion at layout node " +
                               std::to_string(node) + ": " + e.what());
    }
}

uint64_t key3(uint32_t r, uint32_t ry, uint32_t ryb) {
    return (uint64_t(r) << 32) | (uint64_t(ry) << 16) | ryb;
}

}  // namespace

SolveResult solve_max_cut(const Graph& g, const RootedLayout& layout,
                          const SolverOptions& opts) {
    std::vector<NeighborClassIndex> idx(layout.node_count());
    for (int x : layout.post_order())
        idx[x] = exact_index(g, layout.below(x), x, opts);

    constexpr int64_t kUnset = -1;
    std::vector<std::vector<int64_t>> value(layout.node_count());
    std::vector<std::vector<VertexSet>> witness(layout.node_count());
    SolveResult result;
    result.trace.dp_graph_n = g.n();

    for (int x : layout.post_order()) {
        size_t classes = idx[x].class_count();
        value[x].assign(classes, kUnset);
        witness[x].assign(classes, VertexSet(g.n()));
        if (layout.is_leaf(x)) {
            for (size_t r = 0; r < classes; ++r) {
                value[x][r] = 0;
                witness[x][r] = idx[x].rep(uint32_t(r));
            }
        } else {
            int a = layout.node(x).left, b = layout.node(x).right;
            const VertexSet& va = layout.below(a);
            const VertexSet& vb = layout.below(b);
            size_t na = idx[a].class_count(), nb = idx[b].class_count();
            std::vector<std::vector<uint16_t>> cnt_a(na), cnt_b(nb);
            for (size_t i = 0; i < na; ++i)
                cnt_a[i] = idx[x].count_vector(idx[a].rep(uint32_t(i)));
            for (size_t i = 0; i < nb; ++i)
                cnt_b[i] = idx[x].count_vector(idx[b].rep(uint32_t(i)));

            std::vector<uint16_t> sum(idx[x].support().size());
            for (size_t ai = 0; ai < na; ++ai) {
                const VertexSet& ra = idx[a].rep(uint32_t(ai));
                for (size_t bi = 0; bi < nb; ++bi) {
                    const VertexSet& rb = idx[b].rep(uint32_t(bi));
                    for (size_t k = 0; k < sum.size(); ++k)
                        sum[k] = uint16_t(cnt_a[ai][k] + cnt_b[bi][k]);
                    uint32_t r = idx[x].rep_of_counts(sum.data());
                    int64_t cand = value[a][ai] + value[b][bi] +
                                   edges_between(g, ra, vb.minus(rb)) +
                                   edges_between(g, rb, va.minus(ra));
                    if (cand > value[x][r]) {
                        value[x][r] = cand;
                        witness[x][r] = witness[a][ai] | witness[b][bi];
                    }
                }
            }
            for (size_t r = 0; r < classes; ++r)
                if (value[x][r] == kUnset)
                    throw std::logic_error("max cut: class never reached by a join");
            value[a].clear();
            value[b].clear();
            witness[a].clear();
            witness[b].clear();
        }
        TraceRow row;
        row.node = x;
        row.entries = classes;
        row.max_family = 1;
        result.trace.rows.push_back(row);
        result.trace.max_entries = std::max(result.trace.max_entries, classes);
    }

    int root = layout.root();
    result.feasible = true;
    result.weight = value[root][0];
    result.witness = witness[root][0];
    if (edges_between(g, result.witness, result.witness.complement()) != result.weight)
        throw std::logic_error("max cut: certificate check failed");
    return result;
}

SolveResult solve_max_minimal_cut(const Graph& g, const RootedLayout& layout,
                                  const SolverOptions& opts) {
    std::vector<NeighborClassIndex> idx(layout.node_count());
    std::vector<NeighborClassIndex> co1(layout.node_count());
    for (int x : layout.post_order()) {
        idx[x] = exact_index(g, layout.below(x), x, opts);
        co1[x] = build_index(g, layout.below(x).complement(), 1, opts.rep_cap);
        if (co1[x].class_count() >= 65536 || idx[x].class_count() >= (uint64_t{1} << 32))
            throw ResourceCapError("minimal cut solver: too many classes for packed keys");
    }

    std::vector<Table> tab(layout.node_count());
    SolveResult result;
    result.trace.dp_graph_n = g.n();

    for (int x : layout.post_order()) {
        const VertexSet& vx = layout.below(x);
        size_t members_before = 0;
        if (layout.is_leaf(x)) {
            int v = layout.node(x).vertex;
            size_t m = co1[x].class_count();
            for (int take = 0; take <= 1; ++take) {
                VertexSet s(g.n());
                if (take) s.set(v);
                uint32_t r = idx[x].rep_of(s);
                for (uint32_t ry = 0; ry < m; ++ry)
                    for (uint32_t ryb = 0; ryb < m; ++ryb)
                        tab[x][key3(r, ry, ryb)].push_back(Member{s, 0});
            }
            members_before = tab[x].size();
        } else {
            int a = layout.node(x).left, b = layout.node(x).right;
            const VertexSet& va = layout.below(a);
            const VertexSet& vb = layout.below(b);
            size_t na = idx[a].class_count(), nb = idx[b].class_count();
            size_t m = co1[x].class_count();

            std::vector<std::vector<uint16_t>> cnt_a(na), cnt_b(nb);
            std::vector<std::vector<uint16_t>> a_cob(na), acomp_cob(na);
            std::vector<std::vector<uint16_t>> b_coa(nb), bcomp_coa(nb);
            std::vector<int64_t> cross(na * nb);
            for (size_t i = 0; i < na; ++i) {
                const VertexSet& ra = idx[a].rep(uint32_t(i));
                cnt_a[i] = idx[x].count_vector(ra);
                a_cob[i] = co1[b].count_vector(ra);
                acomp_cob[i] = co1[b].count_vector(va.minus(ra));
            }
            for (size_t i = 0; i < nb; ++i) {
                const VertexSet& rb = idx[b].rep(uint32_t(i));
                cnt_b[i] = idx[x].count_vector(rb);
                b_coa[i] = co1[a].count_vector(rb);
                bcomp_coa[i] = co1[a].count_vector(vb.minus(rb));
            }
            std::vector<std::vector<uint16_t>> ry_coa(m), ry_cob(m);
            for (size_t i = 0; i < m; ++i) {
                ry_coa[i] = co1[a].count_vector(co1[x].rep(uint32_t(i)));
                ry_cob[i] = co1[b].count_vector(co1[x].rep(uint32_t(i)));
            }
            for (size_t ai = 0; ai < na; ++ai)
                for (size_t bi = 0; bi < nb; ++bi)
                    cross[ai * nb + bi] =
                        edges_between(g, idx[a].rep(uint32_t(ai)),
                                      vb.minus(idx[b].rep(uint32_t(bi)))) +
                        edges_between(g, idx[b].rep(uint32_t(bi)),
                                      va.minus(idx[a].rep(uint32_t(ai))));

            Table acc;
            std::vector<uint16_t> sum_x(idx[x].support().size());
            std::vector<uint16_t> sum_coa(co1[a].support().size());
            std::vector<uint16_t> sum_cob(co1[b].support().size());
            for (size_t ai = 0; ai < na; ++ai) {
                for (size_t bi = 0; bi < nb; ++bi) {
                    for (size_t k = 0; k < sum_x.size(); ++k)
                        sum_x[k] = uint16_t(cnt_a[ai][k] + cnt_b[bi][k]);
                    uint32_t r = idx[x].rep_of_counts(sum_x.data());
                    int64_t cr = cross[ai * nb + bi];
                    for (uint32_t ry = 0; ry < m; ++ry) {
                        for (size_t k = 0; k < sum_coa.size(); ++k)
                            sum_coa[k] = uint16_t(b_coa[bi][k] + ry_coa[ry][k]);
                        uint32_t a_y = co1[a].rep_of_counts(sum_coa.data());
                        for (size_t k = 0; k < sum_cob.size(); ++k)
                            sum_cob[k] = uint16_t(a_cob[ai][k] + ry_cob[ry][k]);
                        uint32_t b_y = co1[b].rep_of_counts(sum_cob.data());
                        for (uint32_t ryb = 0; ryb < m; ++ryb) {
                            for (size_t k = 0; k < sum_coa.size(); ++k)
                                sum_coa[k] = uint16_t(bcomp_coa[bi][k] + ry_coa[ryb][k]);
                            uint32_t a_yb = co1[a].rep_of_counts(sum_coa.data());
                            auto ita = tab[a].find(key3(uint32_t(ai), a_y, a_yb));
                            if (ita == tab[a].end()) continue;
                            for (size_t k = 0; k < sum_cob.size(); ++k)
                                sum_cob[k] = uint16_t(acomp_cob[ai][k] + ry_cob[ryb][k]);
                            uint32_t b_yb = co1[b].rep_of_counts(sum_cob.data());
                            auto itb = tab[b].find(key3(uint32_t(bi), b_y, b_yb));
                            if (itb == tab[b].end()) continue;
                            WeightedFamily& dst = acc[key3(r, ry, ryb)];
                            for (const Member& xa : ita->second)
                                for (const Member& xb : itb->second)
                                    dst.push_back(Member{xa.set | xb.set,
                                                         xa.weight + xb.weight + cr});
                        }
                    }
                }
            }

            uint64_t pairs = uint64_t(m) * m;
            bool cols_ok = pairs * pairs <= (uint64_t{1} << 28);
            for (uint64_t k : detail::sorted_keys(acc)) {
                WeightedFamily fam = std::move(acc[k]);
                members_before += fam.size();
                dedupe(fam);
                uint32_t ry = uint32_t(k >> 16) & 0xffff, ryb = uint32_t(k) & 0xffff;
                if (cols_ok && fam.size() > opts.mmc_reduce_trigger)
                    fam = reduce_star(g, vx, fam, co1[x].rep(ry), co1[x].rep(ryb),
                                      co1[x]);
                if (!fam.empty()) tab[x][k] = std::move(fam);
            }
            tab[a].clear();
            tab[b].clear();
        }
        detail::record_trace(result.trace, x, tab[x], members_before);
    }

    auto it = tab[layout.root()].find(key3(0, 0, 0));
    if (it != tab[layout.root()].end()) {
        VertexSet all = g.all_vertices();
        for (const Member& mem : it->second) {
            if (!is_connected(g, mem.set) || !is_connected(g, all.minus(mem.set)))
                continue;
            if (!result.feasible || mem.weight > result.weight) {
                result.feasible = true;
                result.weight = mem.weight;
                result.witness = mem.set;
            }
        }
    }
    if (result.feasible) {
        if (edges_between(g, result.witness, result.witness.complement()) !=
            result.weight)
            throw std::logic_error("minimal cut solver: certificate check failed");
    }
    return result;
}

}  // namespace necsolve
