#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "necsolve/gf2.hpp"
#include "necsolve/graph.hpp"

namespace necsolve {

/// Finite or co-finite set of naturals, stored by its finite part
/// (the set itself, or the complement's finite part).
class CofiniteSet {
public:
    static CofiniteSet finite(std::vector<uint32_t> elems) {
        if (elems.empty())
            throw std::invalid_argument("finite constraint sets must be nonempty");
        return CofiniteSet(false, std::move(elems));
    }

    /// Complement of a finite set; an empty complement gives all naturals.
    static CofiniteSet cofinite(std::vector<uint32_t> missing) {
        return CofiniteSet(true, std::move(missing));
    }

    static CofiniteSet nats() { return cofinite({}); }
    static CofiniteSet nats_positive() { return cofinite({0}); }

    bool contains(uint32_t c) const {
        bool in_finite = std::binary_search(part_.begin(), part_.end(), c);
        return cofinite_ ? !in_finite : in_finite;
    }

    bool is_cofinite() const { return cofinite_; }
    const std::vector<uint32_t>& finite_part() const { return part_; }

    /// d(all naturals) = 0; otherwise 1 + min(max of the set, max of the
    /// complement), one of which is finite.
    uint32_t d_value() const {
        if (cofinite_ && part_.empty()) return 0;
        return 1 + part_.back();
    }

    /// "finite:0,1,2" or "cofinite:0"; "cofinite:" alone denotes all naturals.
    static CofiniteSet parse(const std::string& text);
    std::string to_string() const;

private:
    CofiniteSet(bool cofinite, std::vector<uint32_t> part)
        : cofinite_(cofinite), part_(std::move(part)) {
        std::sort(part_.begin(), part_.end());
        part_.erase(std::unique(part_.begin(), part_.end()), part_.end());
    }

    bool cofinite_;
    std::vector<uint32_t> part_;
};

enum class GlobalConstraint { none, connected, connected_co, tree, forest };

enum class ProblemKind { sigma_rho, max_cut, max_min_cut };

struct ProblemSpec {
    CofiniteSet sigma = CofiniteSet::nats();
    CofiniteSet rho = CofiniteSet::nats();
    Direction direction = Direction::minimize;
    GlobalConstraint constraint = GlobalConstraint::none;
    ProblemKind kind = ProblemKind::sigma_rho;
    std::optional<std::vector<int>> terminals;  // 0-indexed
    bool report_complement = false;  // answer is the complement (FVS alias)
    std::string name;

    /// Depth of the neighbor equivalence the dynamic programming runs at:
    /// max{1, d(sigma), d(rho)} for connected variants, max{2, ...} for
    /// tree/forest variants.
    uint32_t dp_depth() const {
        uint32_t base =
            (constraint == GlobalConstraint::tree || constraint == GlobalConstraint::forest)
                ? 2
                : 1;
        return std::max({base, sigma.d_value(), rho.d_value()});
    }
};

/// Named problems with their standard (sigma, rho, d, direction) rows.
/// "connected-q-regular:Q" carries the regularity parameter after a colon.
ProblemSpec catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// Capped local domination check: x joined with any completion whose capped
/// signature matches ext dominates every vertex of `over`. ext[v] must hold
/// min(d, |N(v) cap R'|) for v in `over`.
bool dominates_locally(const Graph& g, uint32_t d, const CofiniteSet& sigma,
                       const CofiniteSet& rho, const VertexSet& over,
                       const VertexSet& x, const std::vector<uint16_t>& ext);

/// Uncapped global check: x (sigma,rho)-dominates all of `over`.
bool dominates(const Graph& g, const CofiniteSet& sigma, const CofiniteSet& rho,
               const VertexSet& over, const VertexSet& x);

}  // namespace necsolve
