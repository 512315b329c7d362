#pragma once

#include "motinf/int_matrix.hpp"
#include "motinf/motive.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace motinf::motives {

/// Free generator of a term: a copy of 1(q), or of an Artin piece when
/// `label` is non-empty.
struct Generator {
    std::int64_t twist = 0;
    std::string label;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Bounded chain complex C_0 <- C_1 <- ... of twist-graded free modules.
/// differential(n) : C_n -> C_{n-1} acts on column vectors, so it is a
/// dim(C_{n-1}) x dim(C_n) matrix. Construction enforces block-diagonality
/// in the twist and d∘d = 0.
class TateComplex {
public:
    TateComplex() = default;
    /// `differentials[k]` is d_{k+1}; there are max(0, terms.size() - 1) of them.
    TateComplex(std::vector<std::vector<Generator>> terms, std::vector<IntMatrix> differentials);

    std::size_t length() const noexcept { return terms_.size(); }
    const std::vector<std::vector<Generator>>& terms() const noexcept { return terms_; }
    const std::vector<Generator>& term(std::size_t n) const { return terms_.at(n); }
    /// d_n for 1 <= n < length().
    const IntMatrix& differential(std::size_t n) const { return differentials_.at(n - 1); }
    const std::vector<IntMatrix>& differentials() const noexcept { return differentials_; }

    friend bool operator==(const TateComplex&, const TateComplex&) = default;

private:
    std::vector<std::vector<Generator>> terms_;
    std::vector<IntMatrix> differentials_;
};

/// Homology of the Tate part of one (term, twist) block.
struct BlockHomology {
    std::size_t term = 0;
    std::int64_t twist = 0;
    std::size_t dimension = 0;  // generators of this twist in the term
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    friend bool operator==(const BlockHomology&, const BlockHomology&) = default;
};

/// Per-(term, twist) homology of the unlabeled generators, ordered by twist
/// then term. Throws Error(NonPermutationArtinDifferential) if labeled
/// generators are hit by anything but a signed partial permutation within
/// their own label.
std::vector<BlockHomology> block_homology(const TateComplex& c);

/// Homology as motives indexed by total degree n + 2q (a twist-q generator in
/// term n stands for 1(q)[2q]). Summands carry twist q and shift 0.
std::vector<ArtinTateMotive> complex_homology(const TateComplex& c);

nlohmann::json to_record(const TateComplex& c);
TateComplex complex_from_record(const nlohmann::json& record);

}  // namespace motinf::motives
