#include <doctest.h>

#include <sstream>

#include "helpers.hpp"

using namespace necsolve;

TEST_CASE("connected components partition the set") {
    Graph p3 = th::make_graph(3, {{0, 1}, {1, 2}});
    CHECK(connected_components(p3, p3.all_vertices()).size() == 1);

    Graph edgeless(3);
    CHECK(connected_components(edgeless, edgeless.all_vertices()).size() == 3);

    Graph mixed = th::make_graph(3, {{0, 1}});
    auto comps = connected_components(mixed, mixed.all_vertices());
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == VertexSet::of(3, {0, 1}));
    CHECK(comps[1] == VertexSet::of(3, {2}));
}

TEST_CASE("connectivity and tree predicates") {
    Graph p3 = th::make_graph(3, {{0, 1}, {1, 2}});
    CHECK(is_tree(p3, p3.all_vertices()));

    Graph triangle = th::make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(!is_forest(triangle, triangle.all_vertices()));
    CHECK(is_connected(triangle, triangle.all_vertices()));

    // Convention: the empty set is not connected, but is a forest.
    VertexSet empty(3);
    CHECK(!is_connected(p3, empty));
    CHECK(is_forest(p3, empty));
    CHECK(!is_tree(p3, empty));
}

TEST_CASE("edges_between counts cross edges") {
    Graph c4 = th::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(edges_between(c4, VertexSet::of(4, {0, 1}), VertexSet::of(4, {2, 3})) == 2);
    CHECK(edges_between(c4, VertexSet(4), c4.all_vertices()) == 0);

    Graph k23 = th::make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    CHECK(edges_between(k23, VertexSet::of(5, {0, 1}), VertexSet::of(5, {2, 3, 4})) == 6);

    CHECK_THROWS_AS(
        edges_between(c4, VertexSet::of(4, {0}), VertexSet::of(4, {0, 1})),
        std::invalid_argument);
}

TEST_CASE("consistent cut count is 2^components") {
    Graph g = th::make_graph(5, {{0, 1}, {2, 3}});
    VertexSet s = VertexSet::of(5, {0, 1, 2, 3});
    CHECK(consistent_cuts(g, s).size() == 4);

    CHECK(consistent_cuts(g, VertexSet(5)).size() == 1);
    CHECK(consistent_cuts(g, VertexSet::of(5, {0, 1})).size() == 2);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        Graph r = testkit::gen_random(7, 0.3, rng());
        VertexSet s2 = th::random_subset(r.all_vertices(), rng);
        size_t cc = connected_components(r, s2).size();
        auto cuts = consistent_cuts(r, s2);
        CHECK(cuts.size() == (size_t{1} << cc));
        for (const auto& [s1, s2b] : cuts) {
            CHECK(!r.neighborhood(s1).intersects(s2b));
            CHECK((s1 | s2b) == s2);
        }
    }
}

TEST_CASE("consistent cuts of a disjoint union recompose") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = testkit::gen_random(8, 0.35, rng());
        VertexSet x = th::random_subset(g.all_vertices(), rng);
        VertexSet y = th::random_subset(g.all_vertices(), rng);
        y.subtract(x);
        VertexSet u = x | y;

        auto cuts_u = consistent_cuts(g, u);
        size_t recomposed = 0;
        for (const auto& [x1, x2] : consistent_cuts(g, x)) {
            for (const auto& [y1, y2] : consistent_cuts(g, y)) {
                if (g.neighborhood(x1).intersects(y2)) continue;
                if (g.neighborhood(x2).intersects(y1)) continue;
                ++recomposed;
                VertexSet w1 = x1 | y1, w2 = x2 | y2;
                bool found = false;
                for (const auto& [u1, u2] : cuts_u)
                    if (u1 == w1 && u2 == w2) found = true;
                CHECK(found);
            }
        }
        CHECK(recomposed == cuts_u.size());
    }
}

TEST_CASE("edge counts add up across a split") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = testkit::gen_random(8, 0.4, rng());
        VertexSet x = th::random_subset(g.all_vertices(), rng);
        VertexSet y = th::random_subset(g.all_vertices(), rng);
        y.subtract(x);
        CHECK(edges_between(g, x, y) == edges_between(g, y, x));
        CHECK(edges_within(g, x | y) ==
              edges_within(g, x) + edges_within(g, y) + edges_between(g, x, y));
    }
}

TEST_CASE("graph file round trip and parse errors") {
    Graph g = th::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    g.set_weight(2, 7);
    std::stringstream ss;
    write_graph(ss, g);
    Graph h = read_graph(ss, "roundtrip");
    CHECK(h.n() == 4);
    CHECK(h.edge_count() == 4);
    CHECK(h.weight(2) == 7);
    CHECK(h.has_edge(3, 0));

    std::stringstream bad("p 3 1\ne 1 5\n");
    CHECK_THROWS_AS(read_graph(bad, "bad"), ParseError);
    std::stringstream bad2("e 1 2\n");
    CHECK_THROWS_AS(read_graph(bad2, "bad2"), ParseError);
}
