#include "motinf/gw_matrix.hpp"

#include "motinf/error.hpp"
#include "motinf/smith.hpp"

#include <algorithm>

namespace motinf::gw {

GwMatrix::GwMatrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, GwElement::zero(field)) {}

GwMatrix::GwMatrix(const Field& field, std::size_t rows, std::size_t cols, std::vector<GwElement> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw Error(ErrorCode::InvalidArgument, "GW matrix expects " + std::to_string(rows * cols) + " entries, got " +
                                                    std::to_string(entries_.size()));
    }
    for (const auto& e : entries_) {
        if (!(e.field() == field_)) throw Error(ErrorCode::WrongField, "GW matrix entry over a different field");
    }
}

GwMatrix GwMatrix::transposed() const {
    GwMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

GwMatrix GwMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
    GwMatrix b(field_, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) b(r, c) = (*this)(row0 + r, col0 + c);
    }
    return b;
}

void apply_row_op(GwMatrix& m, const ElementaryOp& op) {
    switch (op.kind) {
    case ElementaryOp::Kind::Swap:
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(op.i, c), m(op.j, c));
        break;
    case ElementaryOp::Kind::AddMultiple:
        for (std::size_t c = 0; c < m.cols(); ++c) m(op.i, c) += op.factor * m(op.j, c);
        break;
    case ElementaryOp::Kind::Scale:
        if (!op.factor.is_unit()) throw Error(ErrorCode::InvalidArgument, "scale by non-unit " + op.factor.to_string());
        for (std::size_t c = 0; c < m.cols(); ++c) m(op.i, c) = op.factor * m(op.i, c);
        break;
    }
}

void apply_col_op(GwMatrix& m, const ElementaryOp& op) {
    switch (op.kind) {
    case ElementaryOp::Kind::Swap:
        for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, op.i), m(r, op.j));
        break;
    case ElementaryOp::Kind::AddMultiple:
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, op.i) += op.factor * m(r, op.j);
        break;
    case ElementaryOp::Kind::Scale:
        if (!op.factor.is_unit()) throw Error(ErrorCode::InvalidArgument, "scale by non-unit " + op.factor.to_string());
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, op.i) = op.factor * m(r, op.i);
        break;
    }
}

namespace {

using Kind = ElementaryOp::Kind;

constexpr int kProbeMultiples = 4;

class Reduction {
public:
    explicit Reduction(const GwMatrix& m) : w_(m) {}

    GwMatrix& matrix() { return w_; }
    std::vector<ElementaryOp>& left() { return left_; }
    std::vector<ElementaryOp>& right() { return right_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a != b) row({Kind::Swap, a, b, zero()});
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a != b) col({Kind::Swap, a, b, zero()});
    }
    void add_rows(std::size_t target, std::size_t source, const GwElement& f) {
        if (!f.is_zero()) row({Kind::AddMultiple, target, source, f});
    }
    void add_cols(std::size_t target, std::size_t source, const GwElement& f) {
        if (!f.is_zero()) col({Kind::AddMultiple, target, source, f});
    }
    void scale_row(std::size_t i, const GwElement& u) {
        if (!(u == GwElement::one(w_.field()))) row({Kind::Scale, i, i, u});
    }

    // Clears row k and column k given that w(k, k) divides every entry in them.
    void clear_cross(std::size_t k) {
        const GwElement pivot = w_(k, k);
        for (std::size_t r = k + 1; r < w_.rows(); ++r) {
            if (w_(r, k).is_zero()) continue;
            add_rows(r, k, -*pivot.divides(w_(r, k)));
        }
        for (std::size_t c = k + 1; c < w_.cols(); ++c) {
            if (w_(k, c).is_zero()) continue;
            add_cols(c, k, -*pivot.divides(w_(k, c)));
        }
    }

    bool pivot_on_unit(std::size_t k) {
        for (std::size_t r = k; r < w_.rows(); ++r) {
            for (std::size_t c = k; c < w_.cols(); ++c) {
                if (!w_(r, c).is_unit()) continue;
                swap_rows(k, r);
                swap_cols(k, c);
                // Units square to <1>.
                scale_row(k, w_(k, k));
                clear_cross(k);
                return true;
            }
        }
        return false;
    }

    // A single add-multiple step (coefficient = unit times a small integer)
    // that puts a unit into the trailing block.
    bool probe_for_unit(std::size_t k) {
        std::vector<GwElement> coefficients;
        for (int n = 1; n <= kProbeMultiples; ++n) {
            for (const auto& u : GwElement::units(w_.field())) coefficients.push_back(u.times(n));
        }
        for (std::size_t t = k; t < w_.rows(); ++t) {
            for (std::size_t s = k; s < w_.rows(); ++s) {
                if (s == t) continue;
                for (const auto& f : coefficients) {
                    for (std::size_t c = k; c < w_.cols(); ++c) {
                        if ((w_(t, c) + f * w_(s, c)).is_unit()) {
                            add_rows(t, s, f);
                            return true;
                        }
                    }
                }
            }
        }
        for (std::size_t t = k; t < w_.cols(); ++t) {
            for (std::size_t s = k; s < w_.cols(); ++s) {
                if (s == t) continue;
                for (const auto& f : coefficients) {
                    for (std::size_t r = k; r < w_.rows(); ++r) {
                        if ((w_(r, t) + f * w_(r, s)).is_unit()) {
                            add_cols(t, s, f);
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    }

    bool pivot_on_divisor(std::size_t k) {
        for (std::size_t r = k; r < w_.rows(); ++r) {
            for (std::size_t c = k; c < w_.cols(); ++c) {
                const GwElement& e = w_(r, c);
                if (e.is_zero() || !divides_cross(r, c, k)) continue;
                swap_rows(k, r);
                swap_cols(k, c);
                clear_cross(k);
                return true;
            }
        }
        return false;
    }

    bool zero_row(std::size_t r, std::size_t k) const {
        for (std::size_t c = k; c < w_.cols(); ++c) {
            if (!w_(r, c).is_zero()) return false;
        }
        return true;
    }
    bool zero_col(std::size_t c, std::size_t k) const {
        for (std::size_t r = k; r < w_.rows(); ++r) {
            if (!w_(r, c).is_zero()) return false;
        }
        return true;
    }

private:
    bool divides_cross(std::size_t r, std::size_t c, std::size_t k) const {
        const GwElement& e = w_(r, c);
        for (std::size_t cc = k; cc < w_.cols(); ++cc) {
            if (!e.divides(w_(r, cc))) return false;
        }
        for (std::size_t rr = k; rr < w_.rows(); ++rr) {
            if (!e.divides(w_(rr, c))) return false;
        }
        return true;
    }

    GwElement zero() const { return GwElement::zero(w_.field()); }

    void row(ElementaryOp op) {
        apply_row_op(w_, op);
        left_.push_back(std::move(op));
    }
    void col(ElementaryOp op) {
        apply_col_op(w_, op);
        right_.push_back(std::move(op));
    }

    GwMatrix w_;
    std::vector<ElementaryOp> left_;
    std::vector<ElementaryOp> right_;
};

// Unit multiplier bringing a non-unit to its representative: rank >= 0, then
// signature >= 0 (real closed) or disc bit 0 when the rank is odd (finite).
GwElement normalizing_unit(const GwElement& e) {
    const Field& f = e.field();
    GwElement u = GwElement::one(f);
    GwElement x = e;
    if (x.rank() < 0) {
        u = -u;
        x = -x;
    }
    if (f.kind() == Field::Kind::RealClosed && x.signature() < 0) {
        u = u * GwElement::from_class(SquareClass::minus_one(f));
    } else if (f.kind() == Field::Kind::Finite && x.rank() % 2 != 0 && x.disc_bit() == 1) {
        u = u * GwElement::from_class(SquareClass::nontrivial(f));
    }
    return u;
}

std::vector<Integer> snf_diagonal(const IntMatrix& m) {
    auto snf = motives::smith_normal_form(m);
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) d.push_back(snf.S(i, i));
    return d;
}

}  // namespace

GwMatrix DiagonalizationResult::claimed(const Field& field) const {
    GwMatrix m(field, rows, cols);
    for (std::size_t i = 0; i < diagonal.size(); ++i) m(i, i) = diagonal[i];
    if (residual_block) {
        const std::size_t k = diagonal.size();
        for (std::size_t r = 0; r < residual_block->rows(); ++r) {
            for (std::size_t c = 0; c < residual_block->cols(); ++c) m(k + r, k + c) = (*residual_block)(r, c);
        }
    }
    return m;
}

DiagonalizationResult gw_diagonalize(const GwMatrix& m) {
    Reduction red(m);
    const std::size_t limit = std::min(m.rows(), m.cols());
    std::size_t k = 0;
    while (k < limit) {
        if (red.pivot_on_unit(k)) {
            ++k;
            continue;
        }
        if (red.probe_for_unit(k)) continue;
        if (red.pivot_on_divisor(k)) {
            ++k;
            continue;
        }
        break;
    }

    GwMatrix& w = red.matrix();

    // Pair zero rows with zero columns of the trailing block.
    for (;;) {
        if (k >= limit) break;
        std::size_t zr = k;
        while (zr < w.rows() && !red.zero_row(zr, k)) ++zr;
        std::size_t zc = k;
        while (zc < w.cols() && !red.zero_col(zc, k)) ++zc;
        if (zr == w.rows() || zc == w.cols()) break;
        red.swap_rows(k, zr);
        red.swap_cols(k, zc);
        ++k;
    }

    // Stable reorder: units before non-units along the diagonal.
    for (std::size_t i = 1; i < k; ++i) {
        for (std::size_t j = i; j > 0 && w(j, j).is_unit() && !w(j - 1, j - 1).is_unit(); --j) {
            red.swap_rows(j - 1, j);
            red.swap_cols(j - 1, j);
        }
    }

    DiagonalizationResult out;
    out.rows = m.rows();
    out.cols = m.cols();
    for (std::size_t i = 0; i < k; ++i) {
        const GwElement& e = w(i, i);
        if (e.is_unit()) {
            red.scale_row(i, e);
            ++out.unit_count;
        } else if (!e.is_zero()) {
            red.scale_row(i, normalizing_unit(e));
        }
        out.diagonal.push_back(w(i, i));
    }
    if (k < w.rows() && k < w.cols()) {
        GwMatrix rest = w.block(k, k, w.rows() - k, w.cols() - k);
        bool any = false;
        for (std::size_t r = 0; r < rest.rows() && !any; ++r) {
            for (std::size_t c = 0; c < rest.cols() && !any; ++c) any = !rest(r, c).is_zero();
        }
        if (any) out.residual_block = std::move(rest);
    }
    out.left_ops = std::move(red.left());
    out.right_ops = std::move(red.right());
    out.rank_snf = snf_diagonal(rank_realization(m));
    if (m.field().kind() == Field::Kind::RealClosed) out.signature_snf = snf_diagonal(signature_realization(m));
    return out;
}

GwMatrix replay(const GwMatrix& m, const DiagonalizationResult& result) {
    GwMatrix w = m;
    for (const auto& op : result.left_ops) apply_row_op(w, op);
    for (const auto& op : result.right_ops) apply_col_op(w, op);
    return w;
}

IntMatrix rank_realization(const GwMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).rank();
    }
    return out;
}

IntMatrix signature_realization(const GwMatrix& m) {
    if (m.field().kind() != Field::Kind::RealClosed) {
        throw Error(ErrorCode::WrongField, "signature realization requires a real closed field, not " + m.field().to_string());
    }
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).signature();
    }
    return out;
}

}  // namespace motinf::gw
