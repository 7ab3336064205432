#include "necsolve/layout.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "necsolve/gf2.hpp"
#include "necsolve/nec.hpp"

namespace necsolve {

std::vector<int> RootedLayout::post_order() const {
    std::vector<int> out;
    out.reserve(nodes_.size());
    std::vector<std::pair<int, bool>> stack{{root_, false}};
    while (!stack.empty()) {
        auto [x, expanded] = stack.back();
        stack.pop_back();
        if (x < 0) continue;
        if (expanded || is_leaf(x)) {
            out.push_back(x);
        } else {
            stack.emplace_back(x, true);
            stack.emplace_back(nodes_[x].right, false);
            stack.emplace_back(nodes_[x].left, false);
        }
    }
    return out;
}

void RootedLayout::finalize(int n) {
    for (int x : post_order()) {
        Node& nd = nodes_[x];
        nd.below = VertexSet(n);
        if (is_leaf(x)) {
            nd.below.set(nd.vertex);
        } else {
            nd.below |= nodes_[nd.left].below;
            nd.below |= nodes_[nd.right].below;
        }
    }
}

namespace {

struct ExprParser {
    const std::string& text;
    size_t pos = 0;
    std::vector<RootedLayout::Node> nodes;

    explicit ExprParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("layout expression, offset " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && isspace(uint8_t(text[pos]))) ++pos;
    }

    int parse_node() {
        skip_ws();
        if (pos >= text.size() || text[pos] != '(') fail("expected `(`");
        ++pos;
        skip_ws();
        int id;
        if (pos < text.size() && isdigit(uint8_t(text[pos]))) {
            size_t start = pos;
            while (pos < text.size() && isdigit(uint8_t(text[pos]))) ++pos;
            int v = std::stoi(text.substr(start, pos - start));
            if (v < 1) fail("vertex ids are 1-indexed");
            RootedLayout::Node leaf;
            leaf.vertex = v - 1;
            nodes.push_back(leaf);
            id = int(nodes.size()) - 1;
        } else if (pos < text.size() && text[pos] == '(') {
            int left = parse_node();
            int right = parse_node();
            RootedLayout::Node internal;
            internal.left = left;
            internal.right = right;
            nodes.push_back(internal);
            id = int(nodes.size()) - 1;
        } else {
            fail("expected a vertex number or two child expressions");
        }
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') fail("expected `)`");
        ++pos;
        return id;
    }
};

}  // namespace

RootedLayout RootedLayout::from_expression(const std::string& text) {
    ExprParser p(text);
    int root = p.parse_node();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters after root expression");
    return RootedLayout(std::move(p.nodes), root);
}

std::string RootedLayout::to_expression() const {
    std::string out;
    // Iterative to match post_order's stack discipline; recursion is fine at
    // desk scale but layouts parsed from files may be deep caterpillars.
    struct Frame {
        int node;
        int stage;
    };
    std::vector<Frame> stack{{root_, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        const Node& nd = nodes_[f.node];
        if (is_leaf(f.node)) {
            out += "(" + std::to_string(nd.vertex + 1) + ")";
            stack.pop_back();
        } else if (f.stage == 0) {
            out += "(";
            f.stage = 1;
            stack.push_back({nd.left, 0});
        } else if (f.stage == 1) {
            out += " ";
            f.stage = 2;
            stack.push_back({nd.right, 0});
        } else {
            out += ")";
            stack.pop_back();
        }
    }
    return out;
}

LayoutValidation validate_layout(const RootedLayout& layout, const Graph& g) {
    auto violation = [](const std::string& msg, int node) {
        return LayoutValidation{false, msg, node};
    };
    int nn = layout.node_count();
    if (nn == 0 || layout.root() < 0 || layout.root() >= nn)
        return violation("binary tree: missing root", -1);

    std::vector<int> indeg(nn, 0);
    for (int x = 0; x < nn; ++x) {
        const auto& nd = layout.node(x);
        int children = (nd.left >= 0) + (nd.right >= 0);
        if (children == 1)
            return violation("binary tree: node has exactly one child", x);
        if (children == 0 && (nd.vertex < 0 || nd.vertex >= g.n()))
            return violation("leaf bijection: leaf vertex out of range", x);
        if (children == 2) {
            if (nd.left >= nn || nd.right >= nn || nd.left == nd.right)
                return violation("binary tree: bad child reference", x);
            ++indeg[nd.left];
            ++indeg[nd.right];
        }
    }
    for (int x = 0; x < nn; ++x) {
        if (x == layout.root() && indeg[x] != 0)
            return violation("binary tree: root has a parent", x);
        if (x != layout.root() && indeg[x] != 1)
            return violation("binary tree: node not reached exactly once", x);
    }

    std::vector<int> leaf_of(g.n(), -1);
    int leaves = 0;
    for (int x = 0; x < nn; ++x) {
        if (!layout.is_leaf(x)) continue;
        ++leaves;
        int v = layout.node(x).vertex;
        if (leaf_of[v] >= 0)
            return violation("leaf bijection: vertex mapped twice", x);
        leaf_of[v] = x;
    }
    if (leaves != g.n())
        return violation("leaf bijection: leaf count differs from vertex count", -1);
    for (int v = 0; v < g.n(); ++v)
        if (leaf_of[v] < 0)
            return violation("leaf bijection: vertex has no leaf", -1);
    return {};
}

std::optional<int> max_induced_matching(const Graph& g, const VertexSet& a,
                                        uint64_t budget) {
    VertexSet co = a.complement();
    std::vector<std::pair<int, int>> cross;
    for (int u = a.first(); u >= 0; u = a.next(u))
        for (int v = co.first(); v >= 0; v = co.next(v))
            if (g.has_edge(u, v)) cross.emplace_back(u, v);

    uint64_t explored = 0;
    bool aborted = false;
    int best = 0;

    // Branch on the first live vertex of side a: either match it with one of
    // its cross neighbors (removing both closed neighborhoods) or drop it.
    auto recurse = [&](auto&& self, VertexSet live_a, VertexSet live_b,
                       int current) -> void {
        if (aborted) return;
        if (++explored > budget) {
            aborted = true;
            return;
        }
        best = std::max(best, current);
        int u = live_a.first();
        if (u < 0) return;
        // Optimistic bound: every remaining a-vertex could be matched.
        if (current + live_a.count() <= best) return;
        VertexSet nb_u = g.neighbors(u) & live_b;
        for (int v = nb_u.first(); v >= 0; v = nb_u.next(v)) {
            // Only cut-graph adjacencies matter: drop a-side vertices seeing
            // v and b-side vertices seeing u.
            VertexSet na = live_a;
            na.reset(u);
            na.subtract(g.neighbors(v));
            VertexSet nbb = live_b;
            nbb.reset(v);
            nbb.subtract(g.neighbors(u));
            self(self, na, nbb, current + 1);
        }
        VertexSet na = live_a;
        na.reset(u);
        self(self, na, live_b, current);
    };
    recurse(recurse, a, co, 0);
    if (aborted) return std::nullopt;
    return best;
}

CutWidthReport cut_widths(const RootedLayout& layout, const Graph& g,
                          bool with_mim, uint64_t mim_budget) {
    CutWidthReport report;
    bool mim_all_known = with_mim;
    for (int x : layout.post_order()) {
        const VertexSet& a = layout.below(x);
        VertexSet co = a.complement();
        std::vector<VertexSet> rows;
        for (int v = a.first(); v >= 0; v = a.next(v))
            rows.push_back(g.neighbors(v) & co);
        std::vector<VertexSet> distinct;
        for (const auto& r : rows)
            if (std::find(distinct.begin(), distinct.end(), r) == distinct.end())
                distinct.push_back(r);

        CutWidthReport::PerNode pc;
        pc.node = x;
        pc.size = a.count();
        pc.mw = int(distinct.size());

        std::vector<int> cols = co.members();
        std::vector<std::vector<int>> m01;
        std::vector<std::vector<int64_t>> m64;
        for (const auto& r : distinct) {
            std::vector<int> row01(cols.size());
            std::vector<int64_t> row64(cols.size());
            for (size_t j = 0; j < cols.size(); ++j)
                row01[j] = row64[j] = r.test(cols[j]) ? 1 : 0;
            m01.push_back(std::move(row01));
            m64.push_back(std::move(row64));
        }
        pc.rw = cols.empty() ? 0 : gf2::rank_gf2(m01);
        pc.rwq = cols.empty() ? 0 : gf2::rank_rational(m64);
        if (with_mim) {
            pc.mim = max_induced_matching(g, a, mim_budget);
            if (!pc.mim) mim_all_known = false;
        }

        report.mw = std::max(report.mw, pc.mw);
        report.rw = std::max(report.rw, pc.rw);
        report.rwq = std::max(report.rwq, pc.rwq);
        if (pc.mim)
            report.mim = std::max(report.mim.value_or(0), *pc.mim);
        report.cuts.push_back(std::move(pc));
    }
    if (!mim_all_known) report.mim.reset();
    return report;
}

namespace {

RootedLayout caterpillar(const Graph& g, const std::vector<int>& order) {
    std::vector<RootedLayout::Node> nodes;
    auto leaf = [&](int v) {
        RootedLayout::Node nd;
        nd.vertex = v;
        nodes.push_back(nd);
        return int(nodes.size()) - 1;
    };
    int acc = leaf(order[0]);
    for (size_t i = 1; i < order.size(); ++i) {
        int l = leaf(order[i]);
        RootedLayout::Node nd;
        nd.left = acc;
        nd.right = l;
        nodes.push_back(nd);
        acc = int(nodes.size()) - 1;
    }
    RootedLayout layout(std::move(nodes), acc);
    layout.finalize(g.n());
    return layout;
}

}  // namespace

RootedLayout generate_linear(const Graph& g, const std::vector<int>& order) {
    std::vector<int> ord = order;
    if (ord.empty()) {
        ord.resize(g.n());
        for (int v = 0; v < g.n(); ++v) ord[v] = v;
    }
    return caterpillar(g, ord);
}

RootedLayout generate_random(const Graph& g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> perm(g.n());
    for (int v = 0; v < g.n(); ++v) perm[v] = v;
    for (int i = g.n() - 1; i > 0; --i)
        std::swap(perm[i], perm[rng() % uint64_t(i + 1)]);

    std::vector<RootedLayout::Node> nodes;
    auto build = [&](auto&& self, int lo, int hi) -> int {
        if (hi - lo == 1) {
            RootedLayout::Node nd;
            nd.vertex = perm[lo];
            nodes.push_back(nd);
            return int(nodes.size()) - 1;
        }
        int split = lo + 1 + int(rng() % uint64_t(hi - lo - 1));
        int l = self(self, lo, split);
        int r = self(self, split, hi);
        RootedLayout::Node nd;
        nd.left = l;
        nd.right = r;
        nodes.push_back(nd);
        return int(nodes.size()) - 1;
    };
    int root = build(build, 0, g.n());
    RootedLayout layout(std::move(nodes), root);
    layout.finalize(g.n());
    return layout;
}

RootedLayout generate_greedy_nec(const Graph& g, uint32_t depth, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<RootedLayout::Node> nodes;

    auto nec_of = [&](const VertexSet& side) {
        return build_index(g, side, depth).class_count();
    };

    auto split_set = [&](auto&& self, const VertexSet& u) -> int {
        if (u.count() == 1) {
            RootedLayout::Node nd;
            nd.vertex = u.first();
            nodes.push_back(nd);
            return int(nodes.size()) - 1;
        }
        std::vector<int> members = u.members();
        size_t trials = 2 * members.size();
        VertexSet best_side;
        size_t best_cost = SIZE_MAX;
        for (size_t t = 0; t < trials; ++t) {
            VertexSet s1(g.n());
            for (int v : members)
                if (rng() & 1) s1.set(v);
            if (s1.empty() || s1 == u) continue;
            VertexSet s2 = u.minus(s1);
            // Canonical orientation: the side holding u's smallest member.
            VertexSet key = s1.test(members[0]) ? s1 : s2;
            size_t cost = std::max(nec_of(s1), nec_of(s2));
            if (cost < best_cost || (cost == best_cost && key.lex_less(best_side))) {
                best_cost = cost;
                best_side = key;
            }
        }
        if (best_side.universe() == 0) {
            // All trials degenerate; fall back to a single-vertex split.
            best_side = VertexSet(g.n());
            best_side.set(members[0]);
        }
        int l = self(self, best_side);
        int r = self(self, u.minus(best_side));
        RootedLayout::Node nd;
        nd.left = l;
        nd.right = r;
        nodes.push_back(nd);
        return int(nodes.size()) - 1;
    };
    int root = split_set(split_set, g.all_vertices());
    RootedLayout layout(std::move(nodes), root);
    layout.finalize(g.n());
    return layout;
}

}  // namespace necsolve
