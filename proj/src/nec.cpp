#include "necsolve/nec.hpp"

#include <algorithm>
#include <deque>

namespace necsolve {

NecSignature NeighborClassIndex::signature_of(const VertexSet& x) const {
    NecSignature sig;
    sig.counts.resize(support_.size());
    for (size_t i = 0; i < support_.size(); ++i) {
        int c = support_adj_[i].intersection_count(x);
        sig.counts[i] = uint16_t(std::min<int>(c, cap_));
    }
    return sig;
}

uint32_t NeighborClassIndex::rep_of(const VertexSet& x) const {
    NecSignature sig = signature_of(x);
    auto it = lookup_.find(sig);
    if (it == lookup_.end()) {
        std::string diag = "neighbor class lookup failed for {";
        for (int v = x.first(); v >= 0; v = x.next(v))
            diag += std::to_string(v) + ",";
        diag += "} over a side of " + std::to_string(side_.count()) +
                " vertices at depth " + std::to_string(depth_);
        throw std::logic_error(diag);
    }
    return it->second;
}

uint32_t NeighborClassIndex::rep_of_counts(const uint16_t* uncapped) const {
    NecSignature sig;
    sig.counts.resize(support_.size());
    for (size_t i = 0; i < support_.size(); ++i)
        sig.counts[i] = std::min<uint16_t>(uncapped[i], cap_);
    auto it = lookup_.find(sig);
    if (it == lookup_.end())
        throw std::logic_error("neighbor class lookup failed (count vector)");
    return it->second;
}

std::vector<uint16_t> NeighborClassIndex::count_vector(const VertexSet& x) const {
    std::vector<uint16_t> counts(support_.size());
    for (size_t i = 0; i < support_.size(); ++i)
        counts[i] = uint16_t(support_adj_[i].intersection_count(x));
    return counts;
}

NeighborClassIndex build_index(const Graph& g, const VertexSet& side,
                               uint32_t depth, size_t rep_cap) {
    NeighborClassIndex idx;
    idx.g_ = &g;
    idx.side_ = side;
    idx.depth_ = depth;
    // In exact mode no count ever reaches n, so capping at n is uncapped.
    idx.cap_ = uint16_t(depth == kExactDepth ? g.n() : std::min<uint32_t>(depth, 65535));

    VertexSet co = side.complement();
    for (int u = co.first(); u >= 0; u = co.next(u)) {
        VertexSet nb = g.neighbors(u) & side;
        if (!nb.empty()) {
            idx.support_.push_back(u);
            idx.support_adj_.push_back(std::move(nb));
        }
    }

    idx.reps_.push_back(VertexSet(g.n()));
    idx.lookup_.emplace(idx.signature_of(idx.reps_[0]), 0);

    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
        uint32_t ri = queue.front();
        queue.pop_front();
        VertexSet base = idx.reps_[ri];
        for (int v = side.first(); v >= 0; v = side.next(v)) {
            if (base.test(v)) continue;
            VertexSet cand = base;
            cand.set(v);
            NecSignature sig = idx.signature_of(cand);
            auto [it, inserted] = idx.lookup_.try_emplace(std::move(sig),
                                                          uint32_t(idx.reps_.size()));
            if (inserted) {
                idx.reps_.push_back(std::move(cand));
                queue.push_back(it->second);
                if (idx.reps_.size() > rep_cap)
                    throw ResourceCapError(
                        "neighbor class explosion: more than " +
                        std::to_string(rep_cap) + " classes over a side of " +
                        std::to_string(side.count()) + " vertices");
            }
        }
    }
    return idx;
}

}  // namespace necsolve
