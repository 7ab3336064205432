#include "necsolve/graph.hpp"

#include <fstream>
#include <sstream>

namespace necsolve {

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& s) {
    std::vector<VertexSet> comps;
    VertexSet seen(g.n());
    for (int v = s.first(); v >= 0; v = s.next(v)) {
        if (seen.test(v)) continue;
        VertexSet comp(g.n());
        comp.set(v);
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next = g.neighborhood(frontier);
            next &= s;
            next.subtract(comp);
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g, const VertexSet& s) {
    int v = s.first();
    if (v < 0) return false;
    VertexSet comp(g.n());
    comp.set(v);
    VertexSet frontier = comp;
    while (!frontier.empty()) {
        VertexSet next = g.neighborhood(frontier);
        next &= s;
        next.subtract(comp);
        comp |= next;
        frontier = next;
    }
    return comp == s;
}

bool is_forest(const Graph& g, const VertexSet& s) {
    int cc = int(connected_components(g, s).size());
    return edges_within(g, s) == s.count() - cc;
}

bool is_tree(const Graph& g, const VertexSet& s) {
    return is_connected(g, s) && edges_within(g, s) == s.count() - 1;
}

int edges_within(const Graph& g, const VertexSet& s) {
    int twice = 0;
    for (int v = s.first(); v >= 0; v = s.next(v))
        twice += g.neighbors(v).intersection_count(s);
    return twice / 2;
}

int edges_between(const Graph& g, const VertexSet& x, const VertexSet& y) {
    if (x.intersects(y))
        throw std::invalid_argument("edges_between: sides overlap");
    int m = 0;
    for (int v = x.first(); v >= 0; v = x.next(v))
        m += g.neighbors(v).intersection_count(y);
    return m;
}

std::vector<std::pair<VertexSet, VertexSet>> consistent_cuts(const Graph& g,
                                                             const VertexSet& s) {
    std::vector<VertexSet> comps = connected_components(g, s);
    if (comps.size() > 25)
        throw std::invalid_argument("consistent_cuts: too many components");
    std::vector<std::pair<VertexSet, VertexSet>> cuts;
    uint32_t k = uint32_t(comps.size());
    for (uint32_t mask = 0; mask < (uint32_t{1} << k); ++mask) {
        VertexSet s1(g.n()), s2(g.n());
        for (uint32_t i = 0; i < k; ++i) {
            if (mask & (uint32_t{1} << i))
                s1 |= comps[i];
            else
                s2 |= comps[i];
        }
        cuts.emplace_back(std::move(s1), std::move(s2));
    }
    return cuts;
}

namespace {

[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
    throw ParseError(file + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Graph read_graph(std::istream& in, const std::string& filename) {
    std::string line;
    int lineno = 0;
    int n = -1;
    long declared_m = -1, seen_m = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "c") continue;    // comment
        if (tag == "p") {
            if (n >= 0) fail(filename, lineno, "duplicate header");
            if (!(ls >> n >> declared_m) || n < 0)
                fail(filename, lineno, "malformed header, expected `p <n> <m>`");
            g = Graph(n);
        } else if (tag == "w") {
            int v;
            int64_t w;
            if (n < 0) fail(filename, lineno, "weight line before header");
            if (!(ls >> v >> w) || v < 1 || v > n)
                fail(filename, lineno, "malformed weight line, expected `w <v> <int>`");
            g.set_weight(v - 1, w);
        } else if (tag == "e") {
            int u, v;
            if (n < 0) fail(filename, lineno, "edge line before header");
            if (!(ls >> u >> v) || u < 1 || u > n || v < 1 || v > n)
                fail(filename, lineno, "malformed edge line, expected `e <u> <v>`");
            if (u == v) fail(filename, lineno, "self-loop");
            if (!g.has_edge(u - 1, v - 1)) {
                g.add_edge(u - 1, v - 1);
                ++seen_m;
            }
        } else {
            fail(filename, lineno, "unknown line tag `" + tag + "`");
        }
    }
    if (n < 0) fail(filename, lineno, "missing `p <n> <m>` header");
    if (declared_m >= 0 && declared_m != seen_m)
        fail(filename, lineno,
             "header declares " + std::to_string(declared_m) + " edges, found " +
                 std::to_string(seen_m));
    return g;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_graph(in, path);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "p " << g.n() << " " << g.edge_count() << "\n";
    for (int v = 0; v < g.n(); ++v)
        if (g.weight(v) != 1) out << "w " << v + 1 << " " << g.weight(v) << "\n";
    for (int u = 0; u < g.n(); ++u)
        for (int v = g.neighbors(u).next(u); v >= 0; v = g.neighbors(u).next(v))
            out << "e " << u + 1 << " " << v + 1 << "\n";
}

}  // namespace necsolve
