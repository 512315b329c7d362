#pragma once

#include "motinf/field.hpp"
#include "motinf/integer.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace motinf::gw {

/// Class of a nonzero scalar in k^*/k^*2. The token is the only data:
/// QuadraticallyClosed has a single class, RealClosed distinguishes sign,
/// Finite distinguishes square from nonsquare.
class SquareClass {
public:
    static SquareClass one(const Field& field) { return SquareClass(field, false); }
    /// Class of -1.
    static SquareClass minus_one(const Field& field);
    /// Class of 2.
    static SquareClass two(const Field& field);
    /// The fixed nonsquare u of F_q, or -1 over a real closed field.
    static SquareClass nontrivial(const Field& field);
    /// Class of a nonzero integer (sign over RealClosed, residue mod p over Finite).
    static SquareClass of_integer(const Field& field, std::int64_t a);
    /// Parses "+1", "-1", "sq", "nonsq" against the field.
    static SquareClass parse(const Field& field, const std::string& token);

    const Field& field() const noexcept { return field_; }
    bool is_trivial() const noexcept { return !nontrivial_; }
    std::string token() const;

    SquareClass operator*(const SquareClass& other) const;

    friend bool operator==(const SquareClass&, const SquareClass&) = default;

private:
    SquareClass(const Field& field, bool nontrivial) : field_(field), nontrivial_(nontrivial) {}

    Field field_;
    bool nontrivial_;
};

/// Element of GW(k) held in canonical invariant form:
///   QuadraticallyClosed: rank;
///   RealClosed: (rank, signature), rank = signature mod 2;
///   Finite: (rank, disc bit), the disc bit being the coefficient of <u>
///   modulo 2 when the element is written as a<1> + b<u>.
/// Equal invariants is equality in GW(k).
class GwElement {
public:
    explicit GwElement(const Field& field) : field_(field) {}

    static GwElement zero(const Field& field) { return GwElement(field); }
    static GwElement one(const Field& field);
    /// The one-dimensional form <a>.
    static GwElement from_class(const SquareClass& a);
    static GwElement hyperbolic(const Field& field);
    /// Builds from invariants; `aux` is the signature (RealClosed) or the
    /// disc bit (Finite) and must be 0 for QuadraticallyClosed.
    static GwElement from_invariants(const Field& field, Integer rank, Integer aux = 0);

    const Field& field() const noexcept { return field_; }
    const Integer& rank() const noexcept { return rank_; }
    /// Throws Error(WrongField) unless the field is real closed.
    const Integer& signature() const;
    /// Throws Error(WrongField) unless the field is finite.
    int disc_bit() const;

    bool is_zero() const { return rank_ == 0 && aux_ == 0; }
    bool is_unit() const;

    GwElement operator+(const GwElement& other) const;
    GwElement operator-(const GwElement& other) const;
    GwElement operator-() const;
    GwElement operator*(const GwElement& other) const;
    GwElement& operator+=(const GwElement& other) { return *this = *this + other; }
    GwElement& operator-=(const GwElement& other) { return *this = *this - other; }
    GwElement& operator*=(const GwElement& other) { return *this = *this * other; }
    GwElement times(const Integer& n) const;

    /// Some x with (*this) * x == target, if one exists.
    std::optional<GwElement> divides(const GwElement& target) const;

    /// Units in a canonical order (used for certificates and probing).
    static std::vector<GwElement> units(const Field& field);

    /// Readable form, e.g. "2<1> + <-1>", "3H", "0".
    std::string to_string() const;

    friend bool operator==(const GwElement& a, const GwElement& b) {
        return a.field_ == b.field_ && a.rank_ == b.rank_ && a.aux_ == b.aux_;
    }

private:
    void require_same_field(const GwElement& other) const;

    Field field_;
    Integer rank_ = 0;
    Integer aux_ = 0;
};

/// Factor of a finite etale k-algebra: k itself, or k(sqrt d) for a nontrivial class d.
class EtaleFactor {
public:
    static EtaleFactor rational(const Field& field) { return EtaleFactor(field, std::nullopt); }
    /// Throws Error(InvalidArgument) if d is the trivial class.
    static EtaleFactor quadratic(const SquareClass& d);

    const Field& field() const noexcept { return field_; }
    bool is_rational() const noexcept { return !d_.has_value(); }
    const std::optional<SquareClass>& discriminant() const noexcept { return d_; }
    int degree() const noexcept { return d_ ? 2 : 1; }

    friend bool operator==(const EtaleFactor&, const EtaleFactor&) = default;

private:
    EtaleFactor(const Field& field, std::optional<SquareClass> d) : field_(field), d_(std::move(d)) {}

    Field field_;
    std::optional<SquareClass> d_;
};

struct EtaleAlgebra {
    Field field;
    std::vector<EtaleFactor> factors;
};

/// One point of D ∩ C: intersection multiplicity and residue algebra.
struct LocalIntersection {
    std::int64_t multiplicity = 1;
    EtaleAlgebra residue;
};

/// n_ε = Σ_{i=1..n} <(-1)^{i+1}>. Requires n >= 0.
GwElement n_epsilon(std::int64_t n, const Field& field);

GwElement hyperbolic(const Field& field);

/// Euler class of O(d) on P^1: (d/2)·H. Throws Error(OddDegree) for odd d.
GwElement euler_class_p1_bundle(std::int64_t d, const Field& field);

/// Class of the trace form (x, y) ↦ Tr(xy): <1> per rational factor,
/// <2> + <2d> per quadratic factor.
GwElement trace_form_class(const EtaleAlgebra& algebra);

/// Σ_x (m_x)_ε · τ_x. Empty input is the zero element of `field`.
GwElement quadratic_intersection_degree(const Field& field, std::span<const LocalIntersection> points);

}  // namespace motinf::gw
