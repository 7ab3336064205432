#include "necsolve/gf2.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace necsolve::gf2 {

namespace {

int lowest_set_bit(const std::vector<uint64_t>& bits) {
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) return int(i * 64 + std::countr_zero(bits[i]));
    return -1;
}

void xor_into(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

std::vector<uint32_t> max_weight_row_basis(const BitMatrix& m, Direction dir) {
    std::vector<size_t> order(m.row_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (dir == Direction::maximize) return m.row(a).weight > m.row(b).weight;
        return m.row(a).weight < m.row(b).weight;
    });

    // Eliminated basis rows with their pivot positions.
    std::vector<std::pair<int, std::vector<uint64_t>>> basis;
    std::vector<size_t> kept;
    for (size_t idx : order) {
        std::vector<uint64_t> r = m.row(idx).bits;
        for (const auto& [pivot, row] : basis)
            if (BitMatrix::test_bit(r, pivot)) xor_into(r, row);
        int pivot = lowest_set_bit(r);
        if (pivot < 0) continue;
        basis.emplace_back(pivot, std::move(r));
        kept.push_back(idx);
    }
    std::sort(kept.begin(), kept.end());
    std::vector<uint32_t> tags;
    tags.reserve(kept.size());
    for (size_t idx : kept) tags.push_back(m.row(idx).tag);
    return tags;
}

int rank_gf2(const BitMatrix& m) {
    std::vector<std::pair<int, std::vector<uint64_t>>> basis;
    for (size_t i = 0; i < m.row_count(); ++i) {
        std::vector<uint64_t> r = m.row(i).bits;
        for (const auto& [pivot, row] : basis)
            if (BitMatrix::test_bit(r, pivot)) xor_into(r, row);
        int pivot = lowest_set_bit(r);
        if (pivot >= 0) basis.emplace_back(pivot, std::move(r));
    }
    return int(basis.size());
}

int rank_gf2(const std::vector<std::vector<int>>& m) {
    if (m.empty()) return 0;
    BitMatrix bm(int64_t(m[0].size()));
    for (size_t i = 0; i < m.size(); ++i) {
        auto& row = bm.add_row(0, uint32_t(i));
        for (size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] % 2 != 0) BitMatrix::set_bit(row.bits, int64_t(j));
    }
    return rank_gf2(bm);
}

int rank_rational(const std::vector<std::vector<int64_t>>& m) {
    if (m.empty() || m[0].empty()) return 0;
    // Deduplicating identical rows and columns does not change the rank and
    // keeps Bareiss intermediates small.
    std::vector<std::vector<int64_t>> rows = m;
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    size_t nc = rows[0].size();
    std::vector<std::vector<int64_t>> cols;
    for (size_t j = 0; j < nc; ++j) {
        std::vector<int64_t> col(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][j];
        cols.push_back(std::move(col));
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

    size_t nr = cols.empty() ? 0 : cols[0].size();
    std::vector<std::vector<__int128>> a(nr, std::vector<__int128>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < nr; ++i) a[i][j] = cols[j][i];

    const __int128 limit = (__int128(1) << 126);
    auto checked_mul = [&](__int128 x, __int128 y) {
        if (x != 0 && (y > limit / (x > 0 ? x : -x) || y < -(limit / (x > 0 ? x : -x))))
            throw std::overflow_error("rank_rational: Bareiss overflow");
        return x * y;
    };

    size_t rank = 0;
    __int128 prev = 1;
    size_t rows_n = a.size(), cols_n = a.empty() ? 0 : a[0].size();
    for (size_t col = 0; col < cols_n && rank < rows_n; ++col) {
        size_t piv = rank;
        while (piv < rows_n && a[piv][col] == 0) ++piv;
        if (piv == rows_n) continue;
        std::swap(a[rank], a[piv]);
        for (size_t i = rank + 1; i < rows_n; ++i) {
            for (size_t j = col + 1; j < cols_n; ++j) {
                __int128 num = checked_mul(a[rank][col], a[i][j]) -
                               checked_mul(a[i][col], a[rank][j]);
                a[i][j] = num / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return int(rank);
}

}  // namespace necsolve::gf2
