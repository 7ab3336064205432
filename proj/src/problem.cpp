#include "necsolve/problem.hpp"

#include <sstream>

namespace necsolve {

CofiniteSet CofiniteSet::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("constraint set must look like `finite:0,1` or `cofinite:0`");
    std::string kind = text.substr(0, colon);
    std::vector<uint32_t> elems;
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t used = 0;
        unsigned long v = std::stoul(item, &used);
        if (used != item.size())
            throw ParseError("bad number `" + item + "` in constraint set");
        elems.push_back(uint32_t(v));
    }
    if (kind == "finite") {
        if (elems.empty()) throw ParseError("finite constraint sets must be nonempty");
        return CofiniteSet::finite(std::move(elems));
    }
    if (kind == "cofinite") return CofiniteSet::cofinite(std::move(elems));
    throw ParseError("constraint set kind must be `finite` or `cofinite`");
}

std::string CofiniteSet::to_string() const {
    std::string out = cofinite_ ? "cofinite:" : "finite:";
    for (size_t i = 0; i < part_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(part_[i]);
    }
    return out;
}

namespace {

ProblemSpec make(const std::string& name, CofiniteSet sigma, CofiniteSet rho,
                 Direction dir, GlobalConstraint cons) {
    ProblemSpec p;
    p.sigma = std::move(sigma);
    p.rho = std::move(rho);
    p.direction = dir;
    p.constraint = cons;
    p.name = name;
    return p;
}

}  // namespace

ProblemSpec catalog(const std::string& name) {
    using CS = CofiniteSet;
    const auto maxd = Direction::maximize;
    const auto mind = Direction::minimize;

    if (name == "connected-dominating-set")
        return make(name, CS::nats(), CS::nats_positive(), mind,
                    GlobalConstraint::connected);
    if (name == "connected-vertex-cover")
        return make(name, CS::finite({0}), CS::nats(), mind,
                    GlobalConstraint::connected_co);
    if (name == "node-weighted-steiner-tree") {
        ProblemSpec p = make(name, CS::nats(), CS::nats(), mind,
                             GlobalConstraint::connected);
        p.terminals.emplace();  // caller fills the terminal list
        return p;
    }
    if (name == "connected-perfect-dominating-set")
        return make(name, CS::nats(), CS::finite({1}), mind,
                    GlobalConstraint::connected);
    if (name.rfind("connected-q-regular", 0) == 0) {
        auto colon = name.find(':');
        if (colon == std::string::npos)
            throw ParseError("connected-q-regular needs a parameter, e.g. "
                             "`connected-q-regular:2`");
        uint32_t q = uint32_t(std::stoul(name.substr(colon + 1)));
        return make(name, CS::finite({q}), CS::nats(), maxd,
                    GlobalConstraint::connected);
    }
    if (name == "maximum-induced-tree")
        return make(name, CS::nats(), CS::nats(), maxd, GlobalConstraint::tree);
    if (name == "maximum-induced-forest")
        return make(name, CS::nats(), CS::nats(), maxd, GlobalConstraint::forest);
    if (name == "longest-induced-path")
        return make(name, CS::finite({1, 2}), CS::nats(), maxd,
                    GlobalConstraint::tree);
    if (name == "maximum-induced-linear-forest")
        return make(name, CS::finite({1, 2}), CS::nats(), maxd,
                    GlobalConstraint::forest);
    if (name == "feedback-vertex-set") {
        // Solved as maximum-weight induced forest; the complement is reported.
        ProblemSpec p = make(name, CS::nats(), CS::nats(), maxd,
                             GlobalConstraint::forest);
        p.report_complement = true;
        return p;
    }
    if (name == "max-cut") {
        ProblemSpec p;
        p.kind = ProblemKind::max_cut;
        p.direction = maxd;
        p.name = name;
        return p;
    }
    if (name == "maximum-minimal-cut") {
        ProblemSpec p;
        p.kind = ProblemKind::max_min_cut;
        p.direction = maxd;
        p.name = name;
        return p;
    }

    std::string known;
    for (const auto& k : catalog_names()) known += "\n  " + k;
    throw ParseError("unknown problem `" + name + "`; available:" + known);
}

std::vector<std::string> catalog_names() {
    return {"connected-dominating-set",
            "connected-vertex-cover",
            "node-weighted-steiner-tree",
            "connected-perfect-dominating-set",
            "connected-q-regular:<q>",
            "maximum-induced-tree",
            "maximum-induced-forest",
            "longest-induced-path",
            "maximum-induced-linear-forest",
            "feedback-vertex-set",
            "max-cut",
            "maximum-minimal-cut"};
}

bool dominates_locally(const Graph& g, uint32_t d, const CofiniteSet& sigma,
                       const CofiniteSet& rho, const VertexSet& over,
                       const VertexSet& x, const std::vector<uint16_t>& ext) {
    for (int v = over.first(); v >= 0; v = over.next(v)) {
        uint32_t c = uint32_t(g.neighbors(v).intersection_count(x)) + ext[v];
        c = std::min(c, d);
        if (!(x.test(v) ? sigma : rho).contains(c)) return false;
    }
    return true;
}

bool dominates(const Graph& g, const CofiniteSet& sigma, const CofiniteSet& rho,
               const VertexSet& over, const VertexSet& x) {
    for (int v = over.first(); v >= 0; v = over.next(v)) {
        uint32_t c = uint32_t(g.neighbors(v).intersection_count(x));
        if (!(x.test(v) ? sigma : rho).contains(c)) return false;
    }
    return true;
}

}  // namespace necsolve
