#pragma once

#include <cstdint>
#include <vector>

namespace necsolve {

enum class Direction { maximize, minimize };

namespace gf2 {

/// Packed binary matrix whose rows carry a weight and a caller-chosen tag.
/// Row order is preserved as inserted.
class BitMatrix {
public:
    struct Row {
        std::vector<uint64_t> bits;
        int64_t weight;
        uint32_t tag;
    };

    explicit BitMatrix(int64_t cols) : cols_(cols), words_((cols + 63) / 64) {}

    int64_t cols() const { return cols_; }
    size_t row_count() const { return rows_.size(); }
    const Row& row(size_t i) const { return rows_[i]; }

    /// Adds an all-zero row; set bits through the returned reference.
    Row& add_row(int64_t weight, uint32_t tag) {
        rows_.push_back(Row{std::vector<uint64_t>(words_, 0), weight, tag});
        return rows_.back();
    }

    static void set_bit(std::vector<uint64_t>& bits, int64_t i) {
        bits[i >> 6] |= uint64_t{1} << (i & 63);
    }

    static bool test_bit(const std::vector<uint64_t>& bits, int64_t i) {
        return (bits[i >> 6] >> (i & 63)) & 1;
    }

private:
    int64_t cols_;
    size_t words_;
    std::vector<Row> rows_;
};

/// Greedy matroid algorithm: rows sorted by weight (ties by insertion
/// index), a row is kept iff independent of the kept rows over GF(2).
/// Returns the tags of the kept rows in insertion order.
std::vector<uint32_t> max_weight_row_basis(const BitMatrix& m, Direction dir);

int rank_gf2(const BitMatrix& m);
int rank_gf2(const std::vector<std::vector<int>>& m);

/// Exact rank over the rationals via fraction-free (Bareiss) elimination
/// on 128-bit integers. Throws std::overflow_error if intermediates grow
/// past 128 bits.
int rank_rational(const std::vector<std::vector<int64_t>>& m);

}  // namespace gf2
}  // namespace necsolve
