#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace necsolve {

/// Fixed-universe vertex set backed by packed 64-bit words.
/// Vertices are indexed 0..n-1; the universe size is set at construction
/// and shared by all sets operating on the same graph.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(int universe)
        : n_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet of(int universe, std::initializer_list<int> members) {
        VertexSet s(universe);
        for (int v : members) s.set(v);
        return s;
    }

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.set(v);
        return s;
    }

    int universe() const { return n_; }

    bool test(int v) const {
        assert(v >= 0 && v < n_);
        return (words_[v >> 6] >> (v & 63)) & 1;
    }

    void set(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] |= uint64_t{1} << (v & 63);
    }

    void reset(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] &= ~(uint64_t{1} << (v & 63));
    }

    bool empty() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    VertexSet& operator|=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    VertexSet& operator&=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    /// Removes every member of o from this set.
    VertexSet& subtract(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }

    VertexSet minus(const VertexSet& o) const {
        VertexSet r = *this;
        r.subtract(o);
        return r;
    }

    VertexSet complement() const {
        VertexSet r(n_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.mask_tail();
        return r;
    }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

    bool is_subset_of(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    int intersection_count(const VertexSet& o) const {
        assert(n_ == o.n_);
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    /// Smallest member, or -1 when empty.
    int first() const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return int(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    /// Smallest member greater than v, or -1.
    int next(int v) const {
        ++v;
        if (v >= n_) return -1;
        size_t i = size_t(v) >> 6;
        uint64_t w = words_[i] & (~uint64_t{0} << (v & 63));
        while (true) {
            if (w) return int(i * 64 + std::countr_zero(w));
            if (++i >= words_.size()) return -1;
            w = words_[i];
        }
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (int v = first(); v >= 0; v = next(v)) out.push_back(v);
        return out;
    }

    /// Set lexicographic order: the smallest element of the symmetric
    /// difference decides, the set containing it comes first.
    bool lex_less(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t diff = words_[i] ^ o.words_[i];
            if (diff) {
                int bit = std::countr_zero(diff);
                return (words_[i] >> bit) & 1;
            }
        }
        return false;
    }

    uint64_t hash() const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    void mask_tail() {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (~uint64_t{0}) >> (64 - n_ % 64);
    }

    int n_ = 0;
    std::vector<uint64_t> words_;
};

struct VertexSetHash {
    size_t operator()(const VertexSet& s) const { return size_t(s.hash()); }
};

}  // namespace necsolve
