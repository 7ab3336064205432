#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "necsolve/graph.hpp"

namespace necsolve {

struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Capped neighbor-count vector over the co-side support of an index.
struct NecSignature {
    std::vector<uint16_t> counts;

    bool operator==(const NecSignature& o) const { return counts == o.counts; }
};

struct NecSignatureHash {
    size_t operator()(const NecSignature& s) const {
        uint64_t h = 1469598103934665603ull;
        for (uint16_t c : s.counts) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

constexpr uint32_t kExactDepth = 0;  // depth 0 selects exact (uncapped) counts

/// Equivalence classes of subsets of one side of a cut under capped
/// neighbor counts seen from the other side. Holds one canonical
/// representative per class plus a signature lookup.
class NeighborClassIndex {
public:
    const VertexSet& side() const { return side_; }
    uint32_t depth() const { return depth_; }          // kExactDepth = exact mode
    uint16_t cap() const { return cap_; }              // effective count cap
    size_t class_count() const { return reps_.size(); }
    const VertexSet& rep(uint32_t i) const { return reps_[i]; }

    /// Co-side vertices with at least one neighbor in the side; the only
    /// coordinates a signature needs.
    const std::vector<int>& support() const { return support_; }

    NecSignature signature_of(const VertexSet& x) const;

    /// Index of the unique representative equivalent to x. A missing
    /// signature means classes were enumerated incompletely, which is a
    /// program bug; throws std::logic_error with diagnostics.
    uint32_t rep_of(const VertexSet& x) const;

    /// Lookup by precomputed uncapped counts over support(), capping applied
    /// here. The hot path of the compatibility loops.
    uint32_t rep_of_counts(const uint16_t* uncapped) const;

    /// Uncapped counts of |N(u) cap x| over support(), for additive reuse.
    std::vector<uint16_t> count_vector(const VertexSet& x) const;

    friend NeighborClassIndex build_index(const Graph& g, const VertexSet& side,
                                          uint32_t depth, size_t rep_cap);

private:
    const Graph* g_ = nullptr;
    VertexSet side_;
    uint32_t depth_ = 1;
    uint16_t cap_ = 1;
    std::vector<int> support_;
    std::vector<VertexSet> support_adj_;  // neighborhood-in-side per support vertex
    std::vector<VertexSet> reps_;
    std::unordered_map<NecSignature, uint32_t, NecSignatureHash> lookup_;
};

/// Enumerates one canonical representative per equivalence class by a
/// breadth-first closure: seed with the empty set, extend each known
/// representative by one side vertex, keep candidates whose signature is
/// new. depth = kExactDepth selects exact counts.
NeighborClassIndex build_index(const Graph& g, const VertexSet& side,
                               uint32_t depth, size_t rep_cap = 5'000'000);

}  // namespace necsolve
