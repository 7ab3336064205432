#include <doctest.h>

#include <random>

#include "necsolve/gf2.hpp"
#include "necsolve/testkit.hpp"

using namespace necsolve;
using gf2::BitMatrix;

namespace {

BitMatrix from_rows(const std::vector<std::vector<int>>& rows,
                    const std::vector<int64_t>& weights) {
    BitMatrix m(rows.empty() ? 0 : int64_t(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        auto& r = m.add_row(weights[i], uint32_t(i));
        for (size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j]) BitMatrix::set_bit(r.bits, int64_t(j));
    }
    return m;
}

}  // namespace

TEST_CASE("max weight basis picks the heaviest independent rows") {
    BitMatrix m = from_rows({{1, 0}, {0, 1}, {1, 1}}, {5, 4, 3});
    auto basis = gf2::max_weight_row_basis(m, Direction::maximize);
    CHECK(basis == std::vector<uint32_t>{0, 1});

    auto min_basis = gf2::max_weight_row_basis(m, Direction::minimize);
    CHECK(min_basis == std::vector<uint32_t>{1, 2});
}

TEST_CASE("unit rows all kept, zero rows dropped") {
    BitMatrix id = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1, 2, 3});
    CHECK(gf2::max_weight_row_basis(id, Direction::maximize).size() == 3);

    BitMatrix zeros = from_rows({{0, 0}, {0, 0}}, {9, 9});
    CHECK(gf2::max_weight_row_basis(zeros, Direction::maximize).empty());

    BitMatrix empty(4);
    CHECK(gf2::max_weight_row_basis(empty, Direction::maximize).empty());
}

TEST_CASE("ranks of the bipartite family matrices") {
    auto m1 = testkit::hk_matrix(1);
    REQUIRE(m1 == std::vector<std::vector<int64_t>>{{1, 1}, {1, 0}});
    std::vector<std::vector<int>> m1i{{1, 1}, {1, 0}};
    CHECK(gf2::rank_gf2(m1i) == 2);
    CHECK(gf2::rank_rational(m1) == 2);

    auto m2 = testkit::hk_matrix(2);
    std::vector<std::vector<int>> m2i;
    for (const auto& row : m2) m2i.emplace_back(row.begin(), row.end());
    CHECK(gf2::rank_gf2(m2i) == 3);
    CHECK(gf2::rank_rational(m2) == 4);

    CHECK(gf2::rank_rational({{0, 0}, {0, 0}}) == 0);
    CHECK(gf2::rank_gf2(std::vector<std::vector<int>>{{0, 0}, {0, 0}}) == 0);
}

TEST_CASE("block recurrence reproduces the family matrices") {
    for (int k = 0; k < 3; ++k) {
        auto mk = testkit::hk_matrix(k);
        auto mk1 = testkit::hk_matrix(k + 1);
        int side = 1 << k;
        for (int i = 0; i < side; ++i) {
            for (int j = 0; j < side; ++j) {
                CHECK(mk1[i][j] == mk[i][j]);
                CHECK(mk1[i][j + side] == mk[i][j]);
                CHECK(mk1[i + side][j] == mk[i][j]);
                CHECK(mk1[i + side][j + side] == 1 - mk[i][j]);
            }
        }
    }
}

TEST_CASE("greedy basis weight matches exhaustive search") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 3 + int(rng() % 5), cols = 3 + int(rng() % 5);
        std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
        std::vector<int64_t> w(rows);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) m[i][j] = int(rng() % 2);
            w[i] = int64_t(rng() % 20);
        }
        BitMatrix bm = from_rows(m, w);
        auto basis = gf2::max_weight_row_basis(bm, Direction::maximize);
        int64_t got = 0;
        for (uint32_t t : basis) got += w[t];

        // Exhaustive: best-weight independent row set of full rank.
        int full_rank = gf2::rank_gf2(m);
        int64_t best = -1;
        for (uint32_t mask = 0; mask < (uint32_t{1} << rows); ++mask) {
            std::vector<std::vector<int>> sub;
            int64_t sw = 0;
            for (int i = 0; i < rows; ++i)
                if (mask & (uint32_t{1} << i)) {
                    sub.push_back(m[i]);
                    sw += w[i];
                }
            if (int(sub.size()) != full_rank) continue;
            if (gf2::rank_gf2(sub) != full_rank) continue;
            best = std::max(best, sw);
        }
        CHECK(int(basis.size()) == full_rank);
        CHECK(got == best);
    }
}

TEST_CASE("kept rows span every original row") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 4 + int(rng() % 5), cols = 4 + int(rng() % 4);
        std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
        std::vector<int64_t> w(rows);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) m[i][j] = int(rng() % 2);
            w[i] = int64_t(rng() % 10);
        }
        BitMatrix bm = from_rows(m, w);
        auto basis = gf2::max_weight_row_basis(bm, Direction::maximize);
        std::vector<std::vector<int>> kept;
        for (uint32_t t : basis) kept.push_back(m[t]);
        int kept_rank = kept.empty() ? 0 : gf2::rank_gf2(kept);
        for (int i = 0; i < rows; ++i) {
            auto with = kept;
            with.push_back(m[i]);
            CHECK(gf2::rank_gf2(with) == kept_rank);
        }
    }
}

TEST_CASE("rational rank agrees with brute-force minor search") {
    std::mt19937_64 rng(77);
    auto det = [](auto&& self, const std::vector<std::vector<int64_t>>& a) -> int64_t {
        size_t n = a.size();
        if (n == 1) return a[0][0];
        int64_t sum = 0, sign = 1;
        for (size_t c = 0; c < n; ++c) {
            std::vector<std::vector<int64_t>> minor;
            for (size_t i = 1; i < n; ++i) {
                std::vector<int64_t> row;
                for (size_t j = 0; j < n; ++j)
                    if (j != c) row.push_back(a[i][j]);
                minor.push_back(std::move(row));
            }
            sum += sign * a[0][c] * self(self, minor);
            sign = -sign;
        }
        return sum;
    };
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 2 + int(rng() % 4), cols = 2 + int(rng() % 4);
        std::vector<std::vector<int64_t>> m(rows, std::vector<int64_t>(cols));
        for (auto& row : m)
            for (auto& x : row) x = int64_t(rng() % 5) - 2;
        int by_minors = 0;
        for (uint32_t rmask = 0; rmask < (uint32_t{1} << rows); ++rmask) {
            for (uint32_t cmask = 0; cmask < (uint32_t{1} << cols); ++cmask) {
                if (std::popcount(rmask) != std::popcount(cmask)) continue;
                std::vector<std::vector<int64_t>> sub;
                for (int i = 0; i < rows; ++i) {
                    if (!(rmask & (1u << i))) continue;
                    std::vector<int64_t> row;
                    for (int j = 0; j < cols; ++j)
                        if (cmask & (1u << j)) row.push_back(m[i][j]);
                    sub.push_back(std::move(row));
                }
                if (!sub.empty() && det(det, sub) != 0)
                    by_minors = std::max(by_minors, int(sub.size()));
            }
        }
        CHECK(gf2::rank_rational(m) == by_minors);
    }
}

TEST_CASE("gf2 rank agrees with brute-force minor search") {
    std::mt19937_64 rng(55);
    auto det_gf2 = [](std::vector<std::vector<int>> a) {
        size_t n = a.size();
        for (size_t c = 0; c < n; ++c) {
            size_t p = c;
            while (p < n && a[p][c] % 2 == 0) ++p;
            if (p == n) return 0;
            std::swap(a[c], a[p]);
            for (size_t i = c + 1; i < n; ++i)
                if (a[i][c] % 2)
                    for (size_t j = c; j < n; ++j) a[i][j] = (a[i][j] + a[c][j]) % 2;
        }
        return 1;
    };
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + int(rng() % 4);
        std::vector<std::vector<int>> m(n, std::vector<int>(n));
        for (auto& row : m)
            for (auto& x : row) x = int(rng() % 2);
        // Largest k with a nonsingular k x k submatrix.
        int by_minors = 0;
        for (uint32_t rmask = 0; rmask < (uint32_t{1} << n); ++rmask) {
            for (uint32_t cmask = 0; cmask < (uint32_t{1} << n); ++cmask) {
                if (std::popcount(rmask) != std::popcount(cmask)) continue;
                std::vector<std::vector<int>> sub;
                for (int i = 0; i < n; ++i) {
                    if (!(rmask & (1u << i))) continue;
                    std::vector<int> row;
                    for (int j = 0; j < n; ++j)
                        if (cmask & (1u << j)) row.push_back(m[i][j]);
                    sub.push_back(std::move(row));
                }
                if (!sub.empty() && det_gf2(sub))
                    by_minors = std::max(by_minors, int(sub.size()));
            }
        }
        CHECK(gf2::rank_gf2(m) == by_minors);
    }
}
