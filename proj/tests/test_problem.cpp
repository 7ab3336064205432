#include <doctest.h>

#include "helpers.hpp"
#include "necsolve/nec.hpp"
#include "necsolve/problem.hpp"

using namespace necsolve;

TEST_CASE("catalog depths match the standard problem rows") {
    CHECK(catalog("connected-dominating-set").dp_depth() == 1);
    CHECK(catalog("connected-vertex-cover").dp_depth() == 1);
    CHECK(catalog("connected-perfect-dominating-set").dp_depth() == 2);
    CHECK(catalog("connected-q-regular:2").dp_depth() == 3);
    CHECK(catalog("node-weighted-steiner-tree").dp_depth() == 1);
    CHECK(catalog("maximum-induced-tree").dp_depth() == 2);
    CHECK(catalog("maximum-induced-forest").dp_depth() == 2);
    CHECK(catalog("longest-induced-path").dp_depth() == 3);
    CHECK(catalog("maximum-induced-linear-forest").dp_depth() == 3);
    CHECK_THROWS_AS(catalog("no-such-problem"), ParseError);
}

TEST_CASE("cofinite sets parse, print, and measure") {
    CofiniteSet nats = CofiniteSet::parse("cofinite:");
    CHECK(nats.d_value() == 0);
    CHECK(nats.contains(0));
    CHECK(nats.contains(1000));

    CofiniteSet pos = CofiniteSet::parse("cofinite:0");
    CHECK(pos.d_value() == 1);
    CHECK(!pos.contains(0));
    CHECK(pos.contains(1));

    CofiniteSet f = CofiniteSet::parse("finite:1,2");
    CHECK(f.d_value() == 3);
    CHECK(f.contains(2));
    CHECK(!f.contains(3));
    CHECK(f.to_string() == "finite:1,2");

    CHECK_THROWS_AS(CofiniteSet::parse("finite:"), ParseError);
    CHECK_THROWS_AS(CofiniteSet::parse("junk:1"), ParseError);
}

TEST_CASE("local domination with a capped external signature") {
    // Star with center 0: the center dominates every leaf.
    Graph star = th::make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    ProblemSpec ds = catalog("connected-dominating-set");
    std::vector<uint16_t> no_ext(4, 0);
    CHECK(dominates_locally(star, ds.dp_depth(), ds.sigma, ds.rho,
                            star.all_vertices(), VertexSet::of(4, {0}), no_ext));
    CHECK(!dominates_locally(star, ds.dp_depth(), ds.sigma, ds.rho,
                             star.all_vertices(), VertexSet(4), no_ext));

    // No local constraint at all: always true.
    CHECK(dominates_locally(star, 1, CofiniteSet::nats(), CofiniteSet::nats(),
                            star.all_vertices(), VertexSet(4), no_ext));

    // Perfect domination: an isolated undominated vertex fails (0 not in {1}).
    Graph lonely(2);
    ProblemSpec pds = catalog("connected-perfect-dominating-set");
    std::vector<uint16_t> no_ext2(2, 0);
    CHECK(!dominates_locally(lonely, pds.dp_depth(), pds.sigma, pds.rho,
                             lonely.all_vertices(), VertexSet(2), no_ext2));
}

TEST_CASE("capped domination agrees with the uncapped definition") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = testkit::gen_random(8, 0.4, rng());
        VertexSet side = th::random_subset(g.all_vertices(), rng);
        VertexSet co = side.complement();
        std::vector<ProblemSpec> specs = {
            catalog("connected-dominating-set"),
            catalog("connected-perfect-dominating-set"),
            catalog("longest-induced-path"),
            catalog("connected-q-regular:2"),
        };
        for (const ProblemSpec& spec : specs) {
            uint32_t d = spec.dp_depth();
            for (int inner = 0; inner < 10; ++inner) {
                VertexSet x = th::random_subset(side, rng);
                VertexSet y = th::random_subset(co, rng);
                std::vector<uint16_t> ext(g.n(), 0);
                for (int v = side.first(); v >= 0; v = side.next(v))
                    ext[v] = uint16_t(std::min<uint32_t>(
                        uint32_t(g.neighbors(v).intersection_count(y)), d));
                bool capped = dominates_locally(g, d, spec.sigma, spec.rho, side, x, ext);
                bool uncapped = dominates(g, spec.sigma, spec.rho, side, x | y);
                CHECK(capped == uncapped);
            }
        }
    }
}

TEST_CASE("equivalent completions dominate identically") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = testkit::gen_random(7, 0.4, rng());
        VertexSet side = th::random_subset(g.all_vertices(), rng);
        VertexSet co = side.complement();
        ProblemSpec spec = catalog("connected-perfect-dominating-set");
        uint32_t d = spec.dp_depth();
        auto co_idx = build_index(g, co, d);
        auto subsets = th::subsets_of(co);
        for (const VertexSet& x : th::subsets_of(side)) {
            for (size_t i = 0; i < subsets.size(); ++i) {
                for (size_t j = i + 1; j < subsets.size(); ++j) {
                    if (co_idx.rep_of(subsets[i]) != co_idx.rep_of(subsets[j])) continue;
                    CHECK(dominates(g, spec.sigma, spec.rho, side, x | subsets[i]) ==
                          dominates(g, spec.sigma, spec.rho, side, x | subsets[j]));
                }
            }
        }
    }
}
