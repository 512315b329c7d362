#pragma once

#include "motinf/gw.hpp"
#include "motinf/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace motinf::gw {

class GwMatrix {
public:
    /// rows x cols zero matrix.
    GwMatrix(const Field& field, std::size_t rows, std::size_t cols);
    /// Row-major entries; every entry must live over `field`.
    GwMatrix(const Field& field, std::size_t rows, std::size_t cols, std::vector<GwElement> entries);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    GwElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const GwElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    GwMatrix transposed() const;
    GwMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

    friend bool operator==(const GwMatrix&, const GwMatrix&) = default;

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<GwElement> entries_;
};

/// One step of a diagonalization certificate. Applied to rows (left ops) or
/// columns (right ops):
///   Swap:        line[i] <-> line[j]
///   AddMultiple: line[i] += factor * line[j]
///   Scale:       line[i] *= factor, factor a unit
struct ElementaryOp {
    enum class Kind { Swap, AddMultiple, Scale };
    Kind kind;
    std::size_t i;
    std::size_t j;
    GwElement factor;

    friend bool operator==(const ElementaryOp&, const ElementaryOp&) = default;
};

void apply_row_op(GwMatrix& m, const ElementaryOp& op);
void apply_col_op(GwMatrix& m, const ElementaryOp& op);

struct DiagonalizationResult {
    std::size_t rows = 0;
    std::size_t cols = 0;
    /// Leading diagonal: units first (normalized to <1>), then non-units.
    std::vector<GwElement> diagonal;
    std::size_t unit_count = 0;
    /// Trailing block at (diagonal.size(), diagonal.size()) that the greedy
    /// pass could not reduce; contains no unit entries.
    std::optional<GwMatrix> residual_block;
    std::vector<ElementaryOp> left_ops;
    std::vector<ElementaryOp> right_ops;
    /// Smith normal form diagonals of the rank (and, over a real closed
    /// field, signature) realizations of the input.
    std::vector<Integer> rank_snf;
    std::optional<std::vector<Integer>> signature_snf;

    /// The matrix diag(diagonal) ⊕ residual_block padded to rows x cols.
    GwMatrix claimed(const Field& field) const;
};

/// Equivalence (independent row and column operations) towards a diagonal
/// form. Pivots on the first unit in row-major order; when no unit is left,
/// probes single add-multiple steps that create one; then pivots on entries
/// dividing their whole row and column. Whatever remains is the residual block.
DiagonalizationResult gw_diagonalize(const GwMatrix& m);

/// left_ops * m * right_ops.
GwMatrix replay(const GwMatrix& m, const DiagonalizationResult& result);

IntMatrix rank_realization(const GwMatrix& m);
/// Throws Error(WrongField) unless the field is real closed.
IntMatrix signature_realization(const GwMatrix& m);

}  // namespace motinf::gw
