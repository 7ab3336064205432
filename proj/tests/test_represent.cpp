#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "necsolve/represent.hpp"

using namespace necsolve;

namespace {

std::vector<std::pair<VertexSet, int64_t>> as_pairs(const WeightedFamily& fam) {
    std::vector<std::pair<VertexSet, int64_t>> out;
    for (const Member& m : fam) out.emplace_back(m.set, m.weight);
    return out;
}

// Random family of subsets of vx in one depth-1 class, with random weights.
WeightedFamily random_one_class_family(const Graph& g, const VertexSet& vx,
                                       std::mt19937_64& rng) {
    auto in1 = build_index(g, vx, 1);
    std::map<uint32_t, std::vector<VertexSet>> classes;
    for (const VertexSet& x : th::subsets_of(vx))
        classes[in1.rep_of(x)].push_back(x);
    auto it = classes.begin();
    std::advance(it, rng() % classes.size());
    WeightedFamily fam;
    for (const VertexSet& x : it->second)
        if (rng() % 3) fam.push_back(Member{x, int64_t(rng() % 30)});
    return fam;
}

}  // namespace

TEST_CASE("merge basics") {
    WeightedFamily a{{VertexSet::of(4, {0}), 1}};
    WeightedFamily b{{VertexSet::of(4, {1}), 2}};
    WeightedFamily ab = merge(a, b);
    REQUIRE(ab.size() == 1);
    CHECK(ab[0].set == VertexSet::of(4, {0, 1}));
    CHECK(ab[0].weight == 3);

    CHECK(merge({}, b).empty());
    CHECK(merge(a, {}).empty());

    WeightedFamily a2{{VertexSet::of(4, {0}), 1}, {VertexSet(4), 0}};
    WeightedFamily b2{{VertexSet::of(4, {1}), 2}, {VertexSet::of(4, {1, 2}), 5}};
    CHECK(merge(a2, b2).size() == 4);
}

TEST_CASE("reduce with a detached co-class keeps one best connected member") {
    // P4: {1,2} induces an edge (connected, weight 5); {0,3} is disconnected
    // but heavier.
    Graph p4 = testkit::gen_path(4);
    VertexSet vx = p4.all_vertices();
    auto co1 = build_index(p4, VertexSet(4), 1);
    WeightedFamily fam{{VertexSet::of(4, {1, 2}), 5}, {VertexSet::of(4, {0, 3}), 9}};
    WeightedFamily out =
        reduce(p4, fam, VertexSet(4), co1, Direction::maximize);
    REQUIRE(out.size() == 1);
    CHECK(out[0].set == VertexSet::of(4, {1, 2}));
    CHECK(out[0].weight == 5);

    WeightedFamily none{{VertexSet::of(4, {0, 3}), 9}};
    CHECK(reduce(p4, none, VertexSet(4), co1, Direction::maximize).empty());
}

TEST_CASE("reduce is a small representative subset") {
    std::mt19937_64 rng(91);
    int nontrivial = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = 5 + int(rng() % 5);
        Graph g = testkit::gen_random(n, 0.25 + 0.08 * double(rng() % 3), rng());
        VertexSet vx = th::random_subset(g.all_vertices(), rng);
        if (vx.empty() || vx == g.all_vertices()) continue;
        VertexSet co = vx.complement();
        if (co.count() > 8) continue;

        WeightedFamily fam = random_one_class_family(g, vx, rng);
        if (fam.empty()) continue;
        VertexSet r_prime = th::random_subset(co, rng);
        auto co1 = build_index(g, co, 1);
        auto in1 = build_index(g, vx, 1);

        WeightedFamily out =
            reduce(g, fam, r_prime, co1, Direction::maximize);

        // Subset of the input.
        for (const Member& m : out) {
            bool found = false;
            for (const Member& src : fam)
                if (src.set == m.set && src.weight == m.weight) found = true;
            CHECK(found);
        }
        // Size bound (the detached branch may hold two members).
        CHECK(out.size() <= std::max<size_t>(in1.class_count() * in1.class_count(), 2));
        // Representativity against every completion in r_prime's class.
        uint32_t cls = co1.rep_of(r_prime);
        for (const VertexSet& y : th::subsets_of(co)) {
            if (co1.rep_of(y) != cls) continue;
            auto lhs = testkit::oracle_best(g, as_pairs(fam), y,
                                            testkit::BestMode::connected);
            auto rhs = testkit::oracle_best(g, as_pairs(out), y,
                                            testkit::BestMode::connected);
            CHECK(lhs == rhs);
            if (lhs) ++nontrivial;
        }
        // Determinism.
        WeightedFamily again =
            reduce(g, fam, r_prime, co1, Direction::maximize);
        REQUIRE(again.size() == out.size());
        for (size_t i = 0; i < out.size(); ++i) {
            CHECK(again[i].set == out[i].set);
            CHECK(again[i].weight == out[i].weight);
        }
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("union of representative sets represents the union") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = testkit::gen_random(7, 0.35, rng());
        VertexSet vx = th::random_subset(g.all_vertices(), rng);
        if (vx.empty() || vx == g.all_vertices()) continue;
        VertexSet co = vx.complement();
        WeightedFamily fam_a = random_one_class_family(g, vx, rng);
        WeightedFamily fam_c = random_one_class_family(g, vx, rng);
        VertexSet r_prime = th::random_subset(co, rng);
        auto co1 = build_index(g, co, 1);

        WeightedFamily red_a = reduce(g, fam_a, r_prime, co1, Direction::maximize);
        WeightedFamily red_c = reduce(g, fam_c, r_prime, co1, Direction::maximize);
        WeightedFamily union_red = red_a;
        union_red.insert(union_red.end(), red_c.begin(), red_c.end());
        WeightedFamily union_fam = fam_a;
        union_fam.insert(union_fam.end(), fam_c.begin(), fam_c.end());

        uint32_t cls = co1.rep_of(r_prime);
        for (const VertexSet& y : th::subsets_of(co)) {
            if (co1.rep_of(y) != cls) continue;
            CHECK(testkit::oracle_best(g, as_pairs(union_fam), y,
                                       testkit::BestMode::connected) ==
                  testkit::oracle_best(g, as_pairs(union_red), y,
                                       testkit::BestMode::connected));
        }
    }
}

TEST_CASE("reducing before merging preserves the merged best") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = testkit::gen_random(8, 0.35, rng());
        // Split the graph into child sides va, vb and a co-side.
        VertexSet va = th::random_subset(g.all_vertices(), rng);
        VertexSet vb = th::random_subset(va.complement(), rng);
        VertexSet vx = va | vb;
        if (va.empty() || vb.empty() || vx == g.all_vertices()) continue;
        VertexSet co = vx.complement();

        // One-class families on each child at depth 2.
        auto build_family = [&](const VertexSet& side) {
            auto idx = build_index(g, side, 2);
            std::map<uint32_t, WeightedFamily> classes;
            for (const VertexSet& x : th::subsets_of(side))
                classes[idx.rep_of(x)].push_back(Member{x, int64_t(rng() % 20)});
            auto it = classes.begin();
            std::advance(it, rng() % classes.size());
            return it->second;
        };
        WeightedFamily fam_a = build_family(va);
        WeightedFamily fam_b = build_family(vb);
        VertexSet r_prime = th::random_subset(co, rng);

        // Completion classes seen from each child.
        auto co1_a = build_index(g, va.complement(), 1);
        auto co1_b = build_index(g, vb.complement(), 1);
        auto co1_x = build_index(g, co, 1);

        // The child families complete with (other child's member + Y); the
        // completion class is fixed by any sample member plus r_prime.
        VertexSet a_prime = fam_b.front().set | r_prime;
        VertexSet b_prime = fam_a.front().set | r_prime;

        WeightedFamily red_a = reduce(g, fam_a, a_prime, co1_a, Direction::maximize);
        WeightedFamily red_b = reduce(g, fam_b, b_prime, co1_b, Direction::maximize);

        WeightedFamily merged_full = merge(fam_a, fam_b);
        WeightedFamily merged_red = merge(red_a, red_b);

        uint32_t cls = co1_x.rep_of(r_prime);
        for (const VertexSet& y : th::subsets_of(co)) {
            if (co1_x.rep_of(y) != cls) continue;
            CHECK(testkit::oracle_best(g, as_pairs(merged_full), y,
                                       testkit::BestMode::connected) ==
                  testkit::oracle_best(g, as_pairs(merged_red), y,
                                       testkit::BestMode::connected));
        }
    }
}

TEST_CASE("split-matrix product counts consistent cuts") {
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 25; ++trial) {
        Graph g = testkit::gen_random(7, 0.4, rng());
        VertexSet vx = th::random_subset(g.all_vertices(), rng);
        if (vx.empty() || vx == g.all_vertices()) continue;
        VertexSet co = vx.complement();
        auto co1 = build_index(g, co, 1);
        auto in1 = build_index(g, vx, 1);

        WeightedFamily fam = random_one_class_family(g, vx, rng);
        if (fam.empty()) continue;
        VertexSet r_prime = th::random_subset(co, rng);
        if (co1.rep_of(r_prime) == 0) continue;
        uint32_t r_cls = in1.rep_of(fam.front().set);

        // Keep members whose components all touch r_prime's neighborhood,
        // and completions whose components all touch the member class.
        WeightedFamily rows;
        for (const Member& m : fam) {
            bool ok = true;
            for (const VertexSet& c : connected_components(g, m.set))
                if (!g.neighborhood(c).intersects(r_prime)) ok = false;
            if (ok) rows.push_back(m);
        }
        std::vector<VertexSet> ys;
        const VertexSet& r_set = in1.rep(r_cls);
        for (const VertexSet& y : th::subsets_of(co)) {
            if (co1.rep_of(y) != co1.rep_of(r_prime)) continue;
            bool ok = true;
            for (const VertexSet& c : connected_components(g, y))
                if (!g.neighborhood(c).intersects(r_set)) ok = false;
            if (ok) ys.push_back(y);
        }
        if (rows.empty() || ys.empty()) continue;
        ++checked;

        gf2::BitMatrix cmat = connectivity_matrix(g, rows, co1);
        gf2::BitMatrix cbar = testkit::cbar_matrix(g, ys, co1);
        uint32_t m = uint32_t(co1.class_count());
        for (size_t i = 0; i < rows.size(); ++i) {
            for (size_t j = 0; j < ys.size(); ++j) {
                uint64_t prod = 0;
                for (uint32_t pair = 0; pair < m * m; ++pair) {
                    if (gf2::BitMatrix::test_bit(cmat.row(i).bits, pair) &&
                        gf2::BitMatrix::test_bit(cbar.row(pair).bits, int64_t(j)))
                        ++prod;
                }
                VertexSet u = rows[i].set | ys[j];
                size_t cc = connected_components(g, u).size();
                CHECK(prod == (uint64_t{1} << (cc - 1)));
                CHECK((prod % 2 == 1) == is_connected(g, u));
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("the split-matrix identity does not depend on the anchor choice") {
    std::mt19937_64 rng(71);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 10; ++trial) {
        Graph g = testkit::gen_random(6, 0.4, rng());
        VertexSet vx = th::random_subset(g.all_vertices(), rng);
        if (vx.empty() || vx == g.all_vertices()) continue;
        VertexSet co = vx.complement();
        auto co1 = build_index(g, co, 1);
        auto in1 = build_index(g, vx, 1);
        WeightedFamily fam = random_one_class_family(g, vx, rng);
        if (fam.empty()) continue;
        VertexSet r_prime = th::random_subset(co, rng);
        if (co1.rep_of(r_prime) == 0) continue;
        uint32_t r_cls = in1.rep_of(fam.front().set);

        WeightedFamily rows;
        for (const Member& m : fam) {
            bool ok = true;
            for (const VertexSet& c : connected_components(g, m.set))
                if (!g.neighborhood(c).intersects(r_prime)) ok = false;
            if (ok) rows.push_back(m);
        }
        std::vector<VertexSet> ys;
        for (const VertexSet& y : th::subsets_of(co)) {
            if (co1.rep_of(y) != co1.rep_of(r_prime)) continue;
            bool ok = true;
            for (const VertexSet& c : connected_components(g, y))
                if (!g.neighborhood(c).intersects(in1.rep(r_cls))) ok = false;
            if (ok) ys.push_back(y);
        }
        if (rows.empty() || ys.empty()) continue;
        ++checked;

        gf2::BitMatrix cmat = connectivity_matrix(g, rows, co1);
        uint32_t m = uint32_t(co1.class_count());
        // The largest-index anchor instead of the smallest: the product must
        // still count half the consistent cuts.
        for (size_t i = 0; i < rows.size(); ++i) {
            for (size_t j = 0; j < ys.size(); ++j) {
                const VertexSet& y = ys[j];
                int anchor = -1;
                for (int v = y.first(); v >= 0; v = y.next(v)) anchor = v;
                uint64_t prod = 0;
                for (uint32_t p = 0; p < m; ++p) {
                    for (uint32_t q = 0; q < m; ++q) {
                        if (!gf2::BitMatrix::test_bit(cmat.row(i).bits,
                                                      int64_t(p) * m + q))
                            continue;
                        for (const auto& [y1, y2] : consistent_cuts(g, y)) {
                            if (anchor >= 0 && !y1.test(anchor)) continue;
                            if (co1.rep_of(y1) == p && co1.rep_of(y2) == q) {
                                ++prod;
                                break;
                            }
                        }
                    }
                }
                VertexSet u = rows[i].set | y;
                size_t cc = connected_components(g, u).size();
                CHECK(prod == (uint64_t{1} << (cc - 1)));
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("compatible tuple stream has full cardinality and valid classes") {
    std::mt19937_64 rng(59);
    Graph g = testkit::gen_random(7, 0.4, 99);
    RootedLayout layout = generate_random(g, 1);
    uint32_t d = 2;
    // Find an internal node with two leaf children if possible, else any.
    for (int x : layout.post_order()) {
        if (layout.is_leaf(x)) continue;
        int a = layout.node(x).left, b = layout.node(x).right;
        auto ia = build_index(g, layout.below(a), d);
        auto ib = build_index(g, layout.below(b), d);
        auto ica = build_index(g, layout.below(a).complement(), d);
        auto icb = build_index(g, layout.below(b).complement(), d);
        auto ix = build_index(g, layout.below(x), d);
        auto icx = build_index(g, layout.below(x).complement(), d);

        size_t count = 0;
        enumerate_compatible(ia, ib, ica, icb, ix, icx, [&](const CompatTuple& t) {
            ++count;
            // Re-check the three compatibility conditions by signature.
            VertexSet aub = ia.rep(t.a) | ib.rep(t.b);
            CHECK(ix.rep_of(aub) == t.r);
            VertexSet rp = icx.rep(t.r_prime);
            CHECK(ica.rep_of(rp | ib.rep(t.b)) == t.a_prime);
            CHECK(icb.rep_of(rp | ia.rep(t.a)) == t.b_prime);
        });
        CHECK(count == ia.class_count() * ib.class_count() * icx.class_count());
        if (x == layout.root()) CHECK(icx.class_count() == 1);
    }
}
