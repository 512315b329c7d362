#include "motinf/smith.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace motinf::motives {

namespace {

Integer magnitude(const Integer& x) { return x < 0 ? Integer(-x) : x; }

struct Reducer {
    IntMatrix S;
    IntMatrix U;
    IntMatrix V;

    void swap_rows(std::size_t a, std::size_t b) {
        S.swap_rows(a, b);
        U.swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        S.swap_cols(a, b);
        V.swap_cols(a, b);
    }
    void add_row(std::size_t target, std::size_t source, const Integer& f) {
        S.add_row_multiple(target, source, f);
        U.add_row_multiple(target, source, f);
    }
    void add_col(std::size_t target, std::size_t source, const Integer& f) {
        S.add_col_multiple(target, source, f);
        V.add_col_multiple(target, source, f);
    }

    // Smallest nonzero |entry| in the trailing block starting at (t, t).
    std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_mag;
        for (std::size_t r = t; r < S.rows(); ++r) {
            for (std::size_t c = t; c < S.cols(); ++c) {
                if (S(r, c) == 0) continue;
                Integer m = magnitude(S(r, c));
                if (!best || m < best_mag) {
                    best = {r, c};
                    best_mag = m;
                }
            }
        }
        return best;
    }

    // Clears row t and column t below/right of the pivot. Returns false if a
    // nonzero remainder was left behind (the caller re-pivots).
    bool clear_cross(std::size_t t) {
        bool clean = true;
        for (std::size_t r = t + 1; r < S.rows(); ++r) {
            if (S(r, t) == 0) continue;
            Integer q = S(r, t) / S(t, t);
            add_row(r, t, -q);
            if (S(r, t) != 0) clean = false;
        }
        for (std::size_t c = t + 1; c < S.cols(); ++c) {
            if (S(t, c) == 0) continue;
            Integer q = S(t, c) / S(t, t);
            add_col(c, t, -q);
            if (S(t, c) != 0) clean = false;
        }
        return clean;
    }

    // Moves the smallest nonzero entry of row t / column t onto the pivot.
    void repivot_cross(std::size_t t) {
        std::size_t best_r = t;
        std::size_t best_c = t;
        Integer best = S(t, t) == 0 ? Integer(-1) : magnitude(S(t, t));
        for (std::size_t r = t + 1; r < S.rows(); ++r) {
            if (S(r, t) != 0 && (best < 0 || magnitude(S(r, t)) < best)) {
                best = magnitude(S(r, t));
                best_r = r;
                best_c = t;
            }
        }
        for (std::size_t c = t + 1; c < S.cols(); ++c) {
            if (S(t, c) != 0 && (best < 0 || magnitude(S(t, c)) < best)) {
                best = magnitude(S(t, c));
                best_r = t;
                best_c = c;
            }
        }
        swap_rows(t, best_r);
        swap_cols(t, best_c);
    }

    // First entry of the trailing block not divisible by the pivot.
    std::optional<std::size_t> indivisible_row(std::size_t t) const {
        for (std::size_t r = t + 1; r < S.rows(); ++r) {
            for (std::size_t c = t + 1; c < S.cols(); ++c) {
                if (S(r, c) % S(t, t) != 0) return r;
            }
        }
        return std::nullopt;
    }
};

}  // namespace

std::vector<Integer> SnfResult::divisors() const {
    std::vector<Integer> d;
    const std::size_t n = std::min(S.rows(), S.cols());
    for (std::size_t i = 0; i < n; ++i) {
        if (S(i, i) != 0) d.push_back(S(i, i));
    }
    return d;
}

std::size_t SnfResult::rank() const { return divisors().size(); }

SnfResult smith_normal_form(const IntMatrix& a) {
    Reducer red{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < n; ++t) {
        auto start = red.min_entry(t);
        if (!start) break;
        red.swap_rows(t, start->first);
        red.swap_cols(t, start->second);
        for (;;) {
            if (!red.clear_cross(t)) {
                red.repivot_cross(t);
                continue;
            }
            if (auto r = red.indivisible_row(t)) {
                red.add_row(t, *r, 1);
                red.repivot_cross(t);
                continue;
            }
            break;
        }
        if (red.S(t, t) < 0) {
            red.S.negate_row(t);
            red.U.negate_row(t);
        }
    }
    return {std::move(red.S), std::move(red.U), std::move(red.V)};
}

Cokernel cokernel(const SnfResult& snf) {
    Cokernel out;
    auto d = snf.divisors();
    out.free_rank = snf.S.rows() - d.size();
    for (auto& x : d) {
        if (x > 1) out.torsion.push_back(x);
    }
    return out;
}

Cokernel cokernel(const IntMatrix& a) { return cokernel(smith_normal_form(a)); }

std::size_t kernel_rank(const SnfResult& snf) { return snf.S.cols() - snf.rank(); }

std::size_t kernel_rank(const IntMatrix& a) { return kernel_rank(smith_normal_form(a)); }

}  // namespace motinf::motives
