#include "necsolve/represent.hpp"

#include <cassert>
#include <unordered_map>

namespace necsolve {

WeightedFamily merge(const WeightedFamily& a, const WeightedFamily& b) {
    if (a.empty() || b.empty()) return {};
    WeightedFamily out;
    out.reserve(a.size() * b.size());
    for (const Member& x : a) {
        for (const Member& y : b) {
            assert(!x.set.intersects(y.set));
            out.push_back(Member{x.set | y.set, x.weight + y.weight});
        }
    }
    return out;
}

void dedupe(WeightedFamily& fam) {
    std::unordered_map<VertexSet, uint32_t, VertexSetHash> seen;
    WeightedFamily out;
    out.reserve(fam.size());
    for (Member& m : fam) {
        auto [it, inserted] = seen.try_emplace(m.set, uint32_t(out.size()));
        if (inserted) out.push_back(std::move(m));
    }
    fam = std::move(out);
}

namespace {

/// Per-component availability row: avail[p] = 1 iff the component's
/// neighborhood misses representative p.
std::vector<char> component_avail(const Graph& g, const VertexSet& comp,
                                  const NeighborClassIndex& co1) {
    VertexSet nb = g.neighborhood(comp);
    std::vector<char> avail(co1.class_count());
    for (uint32_t p = 0; p < co1.class_count(); ++p)
        avail[p] = !co1.rep(p).intersects(nb);
    return avail;
}

Member best_by(const WeightedFamily& fam, Direction dir,
               const std::function<bool(const Member&)>& pred, bool& found) {
    found = false;
    Member best;
    for (const Member& m : fam) {
        if (!pred(m)) continue;
        bool better = dir == Direction::maximize ? m.weight > best.weight
                                                 : m.weight < best.weight;
        if (!found || better) {
            best = m;
            found = true;
        }
    }
    return best;
}

}  // namespace

gf2::BitMatrix connectivity_matrix(const Graph& g, const WeightedFamily& fam,
                                   const NeighborClassIndex& co1) {
    uint32_t m = uint32_t(co1.class_count());
    gf2::BitMatrix mat(int64_t(m) * m);
    for (size_t i = 0; i < fam.size(); ++i) {
        auto& row = mat.add_row(fam[i].weight, uint32_t(i));
        std::vector<std::vector<char>> avail;
        for (const VertexSet& comp : connected_components(g, fam[i].set))
            avail.push_back(component_avail(g, comp, co1));
        for (uint32_t p = 0; p < m; ++p) {
            for (uint32_t q = 0; q < m; ++q) {
                bool ok = true;
                for (const auto& a : avail)
                    if (!a[p] && !a[q]) {
                        ok = false;
                        break;
                    }
                if (ok) gf2::BitMatrix::set_bit(row.bits, int64_t(p) * m + q);
            }
        }
    }
    return mat;
}

WeightedFamily reduce(const Graph& g, const WeightedFamily& fam,
                      const VertexSet& r_prime, const NeighborClassIndex& co1,
                      Direction dir) {
    if (fam.empty()) return {};
#ifndef NDEBUG
    // Callers guarantee one depth-1 class per family; checked in debug only.
    VertexSet nb0 = g.neighborhood(fam.front().set) & co1.side();
    for (const Member& m : fam) {
        assert(m.set.is_subset_of(co1.side().complement()));
        assert((g.neighborhood(m.set) & co1.side()) == nb0);
    }
#endif

    // Co-classes equivalent to the empty set attach nothing to this side.
    // The empty completion connects only through an already-connected member;
    // a nonempty completion in this class connects only through the empty
    // member. Keeping one best connected member plus the empty member (when
    // present) covers both.
    if (co1.rep_of(r_prime) == 0) {
        bool found;
        Member best = best_by(
            fam, dir, [&](const Member& m) { return is_connected(g, m.set); }, found);
        WeightedFamily out;
        for (const Member& m : fam)
            if (m.set.empty()) {
                out.push_back(m);
                break;
            }
        if (found) out.push_back(best);
        return out;
    }

    // A component with no neighbor in r_prime can never join the rest.
    WeightedFamily survivors;
    for (const Member& m : fam) {
        bool ok = true;
        for (const VertexSet& c : connected_components(g, m.set))
            if (!g.neighborhood(c).intersects(r_prime)) {
                ok = false;
                break;
            }
        if (ok) survivors.push_back(m);
    }
    if (survivors.empty()) return {};

    gf2::BitMatrix mat = connectivity_matrix(g, survivors, co1);
    WeightedFamily out;
    for (uint32_t tag : gf2::max_weight_row_basis(mat, dir))
        out.push_back(survivors[tag]);
    return out;
}

WeightedFamily reduce_star(const Graph& g, const VertexSet& vx,
                           const WeightedFamily& fam, const VertexSet& r_y,
                           const VertexSet& r_ybar,
                           const NeighborClassIndex& co1) {
    if (fam.empty()) return {};
    VertexSet co_full = vx.complement();
    VertexSet all = g.all_vertices();
    uint32_t cls_y = co1.rep_of(r_y);
    uint32_t cls_ybar = co1.rep_of(r_ybar);
    uint32_t cls_full = co1.rep_of(co_full);

    if (cls_y == 0 || cls_ybar == 0) {
        if (cls_y == 0 && cls_ybar == cls_full) {
            // The empty completion needs the best member that is a minimal
            // cut on its own; a nonempty completion in the empty class can
            // only pair with the empty member.
            bool found;
            Member best = best_by(
                fam, Direction::maximize,
                [&](const Member& m) {
                    return is_connected(g, m.set) && is_connected(g, all.minus(m.set));
                },
                found);
            WeightedFamily out;
            for (const Member& m : fam)
                if (m.set.empty()) {
                    out.push_back(m);
                    break;
                }
            if (found) out.push_back(best);
            return out;
        }
        if (cls_ybar == 0 && cls_y == cls_full) {
            // Symmetric: the whole co-side completes the member's side, and a
            // partial completion leaving co-side leftovers pairs only with the
            // full member.
            bool found;
            Member best = best_by(
                fam, Direction::maximize,
                [&](const Member& m) {
                    return is_connected(g, m.set | co_full) &&
                           is_connected(g, vx.minus(m.set));
                },
                found);
            WeightedFamily out;
            for (const Member& m : fam)
                if (m.set == vx) {
                    out.push_back(m);
                    break;
                }
            if (found) out.push_back(best);
            return out;
        }
        return {};
    }

    WeightedFamily survivors;
    std::vector<std::vector<VertexSet>> comps_in, comps_out;
    for (const Member& m : fam) {
        auto cin = connected_components(g, m.set);
        auto cout = connected_components(g, vx.minus(m.set));
        bool ok = true;
        for (const VertexSet& c : cin)
            if (!g.neighborhood(c).intersects(r_y)) {
                ok = false;
                break;
            }
        if (ok)
            for (const VertexSet& c : cout)
                if (!g.neighborhood(c).intersects(r_ybar)) {
                    ok = false;
                    break;
                }
        if (ok) {
            survivors.push_back(m);
            comps_in.push_back(std::move(cin));
            comps_out.push_back(std::move(cout));
        }
    }
    if (survivors.empty()) return {};

    uint64_t nrep = co1.class_count();
    uint64_t pair_count = nrep * nrep;
    if (pair_count * pair_count > (uint64_t{1} << 28))
        throw ResourceCapError("reduce_star: co-class pair space too large (" +
                               std::to_string(nrep) + " depth-1 classes)");

    gf2::BitMatrix mat(int64_t(pair_count * pair_count));
    std::vector<char> u(pair_count), w(pair_count);
    for (size_t i = 0; i < survivors.size(); ++i) {
        auto pair_row = [&](const std::vector<VertexSet>& comps,
                            std::vector<char>& dst) {
            std::vector<std::vector<char>> avail;
            for (const VertexSet& comp : comps)
                avail.push_back(component_avail(g, comp, co1));
            for (uint64_t p = 0; p < nrep; ++p) {
                for (uint64_t q = 0; q < nrep; ++q) {
                    bool ok = true;
                    for (const auto& a : avail)
                        if (!a[p] && !a[q]) {
                            ok = false;
                            break;
                        }
                    dst[p * nrep + q] = ok;
                }
            }
        };
        pair_row(comps_in[i], u);
        pair_row(comps_out[i], w);
        auto& row = mat.add_row(survivors[i].weight, uint32_t(i));
        for (uint64_t a = 0; a < pair_count; ++a) {
            if (!u[a]) continue;
            for (uint64_t b = 0; b < pair_count; ++b)
                if (w[b]) gf2::BitMatrix::set_bit(row.bits, int64_t(a * pair_count + b));
        }
    }

    WeightedFamily out;
    for (uint32_t tag : gf2::max_weight_row_basis(mat, Direction::maximize))
        out.push_back(survivors[tag]);
    return out;
}

void enumerate_compatible(const NeighborClassIndex& idx_a,
                          const NeighborClassIndex& idx_b,
                          const NeighborClassIndex& idx_co_a,
                          const NeighborClassIndex& idx_co_b,
                          const NeighborClassIndex& idx_x,
                          const NeighborClassIndex& idx_co_x,
                          const std::function<void(const CompatTuple&)>& emit) {
    size_t na = idx_a.class_count(), nb = idx_b.class_count();
    size_t nr = idx_co_x.class_count();

    // Count vectors so the inner loop does vector adds instead of fresh
    // signature scans.
    std::vector<std::vector<uint16_t>> a_on_x(na), b_on_x(nb);
    std::vector<std::vector<uint16_t>> b_on_coa(nb), r_on_coa(nr);
    std::vector<std::vector<uint16_t>> a_on_cob(na), r_on_cob(nr);
    for (size_t i = 0; i < na; ++i) {
        a_on_x[i] = idx_x.count_vector(idx_a.rep(uint32_t(i)));
        a_on_cob[i] = idx_co_b.count_vector(idx_a.rep(uint32_t(i)));
    }
    for (size_t i = 0; i < nb; ++i) {
        b_on_x[i] = idx_x.count_vector(idx_b.rep(uint32_t(i)));
        b_on_coa[i] = idx_co_a.count_vector(idx_b.rep(uint32_t(i)));
    }
    for (size_t i = 0; i < nr; ++i) {
        r_on_coa[i] = idx_co_a.count_vector(idx_co_x.rep(uint32_t(i)));
        r_on_cob[i] = idx_co_b.count_vector(idx_co_x.rep(uint32_t(i)));
    }

    std::vector<uint16_t> sum_x(idx_x.support().size());
    std::vector<uint16_t> sum_coa(idx_co_a.support().size());
    std::vector<uint16_t> sum_cob(idx_co_b.support().size());
    for (size_t ai = 0; ai < na; ++ai) {
        for (size_t bi = 0; bi < nb; ++bi) {
            for (size_t k = 0; k < sum_x.size(); ++k)
                sum_x[k] = uint16_t(a_on_x[ai][k] + b_on_x[bi][k]);
            uint32_t r = idx_x.rep_of_counts(sum_x.data());
            for (size_t ri = 0; ri < nr; ++ri) {
                for (size_t k = 0; k < sum_coa.size(); ++k)
                    sum_coa[k] = uint16_t(b_on_coa[bi][k] + r_on_coa[ri][k]);
                uint32_t a_prime = idx_co_a.rep_of_counts(sum_coa.data());
                for (size_t k = 0; k < sum_cob.size(); ++k)
                    sum_cob[k] = uint16_t(a_on_cob[ai][k] + r_on_cob[ri][k]);
                uint32_t b_prime = idx_co_b.rep_of_counts(sum_cob.data());
                emit(CompatTuple{uint32_t(ai), uint32_t(bi), uint32_t(ri), r,
                                 a_prime, b_prime});
            }
        }
    }
}

}  // namespace necsolve
