#pragma once

#include <unordered_map>

#include "necsolve/nec.hpp"
#include "necsolve/solver.hpp"

namespace necsolve::detail {

using Table = std::unordered_map<uint64_t, WeightedFamily>;

inline uint64_t key2(uint32_t r, uint32_t rp) { return (uint64_t(r) << 32) | rp; }
inline uint32_t key2_r(uint64_t k) { return uint32_t(k >> 32); }
inline uint32_t key2_rp(uint64_t k) { return uint32_t(k); }

// Four 16-bit class indices packed into one key.
inline uint64_t key4(uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
    return (uint64_t(a) << 48) | (uint64_t(b) << 32) | (uint64_t(c) << 16) | d;
}

inline std::vector<uint64_t> sorted_keys(const Table& t) {
    std::vector<uint64_t> keys;
    keys.reserve(t.size());
    for (const auto& [k, fam] : t) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline void record_trace(SolveTrace& trace, int node, const Table& tab,
                         size_t members_before) {
    TraceRow row;
    row.node = node;
    row.entries = tab.size();
    row.members_before = members_before;
    for (const auto& [k, fam] : tab) {
        row.max_family = std::max(row.max_family, fam.size());
        row.members_after += fam.size();
    }
    trace.rows.push_back(row);
    trace.max_entries = std::max(trace.max_entries, row.entries);
    trace.max_family = std::max(trace.max_family, row.max_family);
}

// Capped count of |N(v) cap s| as one signature coordinate.
inline uint16_t capped_count(const Graph& g, int v, const VertexSet& s, uint32_t d) {
    return uint16_t(std::min<uint32_t>(g.neighbors(v).intersection_count(s), d));
}

}  // namespace necsolve::detail
