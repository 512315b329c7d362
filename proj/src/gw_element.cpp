#include "motinf/gw.hpp"

#include "motinf/error.hpp"

#include <sstream>

namespace motinf::gw {

namespace {

using Kind = Field::Kind;

Integer mod2(const Integer& x) {
    Integer r = x % 2;
    return r < 0 ? r + 2 : r;
}

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

bool legendre_is_square(std::int64_t a, std::uint64_t p) {
    std::uint64_t base = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p))
                                                    % static_cast<std::int64_t>(p));
    std::uint64_t e = (p - 1) / 2;
    std::uint64_t result = 1;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result == 1;
}

// Solves c * x = t over the integers; nullopt if impossible, "free" if every x works.
struct LinearSolution {
    bool possible = false;
    bool free = false;
    Integer value = 0;
};

LinearSolution solve_scalar(const Integer& c, const Integer& t) {
    if (c == 0) return {t == 0, true, 0};
    if (t % c != 0) return {};
    return {true, false, t / c};
}

// Writes a<first> + b<second> with unit coefficients elided.
std::string two_term(const Integer& a, const std::string& first, const Integer& b, const std::string& second) {
    std::ostringstream os;
    bool started = false;
    auto emit = [&](const Integer& coeff, const std::string& symbol) {
        if (coeff == 0) return;
        Integer mag = abs_of(coeff);
        if (started) {
            os << (coeff < 0 ? " - " : " + ");
        } else if (coeff < 0) {
            os << "-";
        }
        if (mag != 1) os << mag;
        os << symbol;
        started = true;
    };
    emit(a, first);
    emit(b, second);
    if (!started) return "0";
    return os.str();
}

}  // namespace

SquareClass SquareClass::minus_one(const Field& field) { return SquareClass(field, !field.minus_one_is_square()); }

SquareClass SquareClass::two(const Field& field) { return SquareClass(field, !field.two_is_square()); }

SquareClass SquareClass::nontrivial(const Field& field) {
    if (field.kind() == Kind::QuadraticallyClosed) {
        throw Error(ErrorCode::WrongField, "a quadratically closed field has a single square class");
    }
    return SquareClass(field, true);
}

SquareClass SquareClass::of_integer(const Field& field, std::int64_t a) {
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "square class of 0 is undefined");
    switch (field.kind()) {
    case Kind::QuadraticallyClosed: return one(field);
    case Kind::RealClosed: return SquareClass(field, a < 0);
    case Kind::Finite: {
        const std::uint64_t p = field.characteristic();
        if (a % static_cast<std::int64_t>(p) == 0) {
            throw Error(ErrorCode::InvalidArgument,
                        std::to_string(a) + " vanishes in " + field.to_string() + " and has no square class");
        }
        unsigned degree = 0;
        for (std::uint64_t r = field.order(); r > 1; r /= p) ++degree;
        // Every element of F_p is a square in F_{p^e} for even e.
        if (degree % 2 == 0) return one(field);
        return SquareClass(field, !legendre_is_square(a, p));
    }
    }
    return one(field);
}

SquareClass SquareClass::parse(const Field& field, const std::string& token) {
    switch (field.kind()) {
    case Kind::QuadraticallyClosed:
        if (token == "sq" || token == "+1") return one(field);
        break;
    case Kind::RealClosed:
        if (token == "+1") return one(field);
        if (token == "-1") return SquareClass(field, true);
        break;
    case Kind::Finite:
        if (token == "sq") return one(field);
        if (token == "nonsq") return SquareClass(field, true);
        break;
    }
    throw Error(ErrorCode::Parse, "square class '" + token + "' is not valid over " + field.to_string());
}

std::string SquareClass::token() const {
    switch (field_.kind()) {
    case Kind::QuadraticallyClosed: return "sq";
    case Kind::RealClosed: return nontrivial_ ? "-1" : "+1";
    case Kind::Finite: return nontrivial_ ? "nonsq" : "sq";
    }
    return "?";
}

SquareClass SquareClass::operator*(const SquareClass& other) const {
    if (!(field_ == other.field_)) throw Error(ErrorCode::WrongField, "square classes over different fields");
    return SquareClass(field_, nontrivial_ != other.nontrivial_);
}

// ---------------------------------------------------------------------------

GwElement GwElement::one(const Field& field) { return from_class(SquareClass::one(field)); }

GwElement GwElement::from_class(const SquareClass& a) {
    GwElement x(a.field());
    x.rank_ = 1;
    switch (a.field().kind()) {
    case Kind::QuadraticallyClosed: break;
    case Kind::RealClosed: x.aux_ = a.is_trivial() ? 1 : -1; break;
    case Kind::Finite: x.aux_ = a.is_trivial() ? 0 : 1; break;
    }
    return x;
}

GwElement GwElement::hyperbolic(const Field& field) {
    return one(field) + from_class(SquareClass::minus_one(field));
}

GwElement GwElement::from_invariants(const Field& field, Integer rank, Integer aux) {
    switch (field.kind()) {
    case Kind::QuadraticallyClosed:
        if (aux != 0) throw Error(ErrorCode::InvalidArgument, "GW(qc) elements carry only a rank");
        break;
    case Kind::RealClosed:
        if (mod2(rank - aux) != 0) {
            throw Error(ErrorCode::InvalidArgument,
                        "rank " + rank.str() + " and signature " + aux.str() + " differ in parity");
        }
        break;
    case Kind::Finite:
        if (aux != 0 && aux != 1) throw Error(ErrorCode::InvalidArgument, "disc bit must be 0 or 1");
        break;
    }
    GwElement x(field);
    x.rank_ = std::move(rank);
    x.aux_ = std::move(aux);
    return x;
}

const Integer& GwElement::signature() const {
    if (field_.kind() != Kind::RealClosed) {
        throw Error(ErrorCode::WrongField, "signature is only defined over a real closed field, not " + field_.to_string());
    }
    return aux_;
}

int GwElement::disc_bit() const {
    if (field_.kind() != Kind::Finite) {
        throw Error(ErrorCode::WrongField, "disc bit is only defined over a finite field, not " + field_.to_string());
    }
    return aux_ == 0 ? 0 : 1;
}

bool GwElement::is_unit() const {
    if (abs_of(rank_) != 1) return false;
    if (field_.kind() == Kind::RealClosed) return abs_of(aux_) == 1;
    return true;
}

void GwElement::require_same_field(const GwElement& other) const {
    if (!(field_ == other.field_)) {
        throw Error(ErrorCode::WrongField,
                    "GW elements over different fields: " + field_.to_string() + " vs " + other.field_.to_string());
    }
}

GwElement GwElement::operator+(const GwElement& other) const {
    require_same_field(other);
    GwElement x(field_);
    x.rank_ = rank_ + other.rank_;
    x.aux_ = field_.kind() == Kind::Finite ? mod2(aux_ + other.aux_) : Integer(aux_ + other.aux_);
    return x;
}

GwElement GwElement::operator-() const {
    GwElement x(field_);
    x.rank_ = -rank_;
    // -(a + b<u>) = (-a - 2b) + b<u> since 2<u> = 2<1>: the disc bit is unchanged.
    x.aux_ = field_.kind() == Kind::Finite ? aux_ : Integer(-aux_);
    return x;
}

GwElement GwElement::operator-(const GwElement& other) const { return *this + (-other); }

GwElement GwElement::operator*(const GwElement& other) const {
    require_same_field(other);
    GwElement x(field_);
    x.rank_ = rank_ * other.rank_;
    switch (field_.kind()) {
    case Kind::QuadraticallyClosed: break;
    case Kind::RealClosed: x.aux_ = aux_ * other.aux_; break;
    case Kind::Finite: x.aux_ = mod2(rank_ * other.aux_ + other.rank_ * aux_); break;
    }
    return x;
}

GwElement GwElement::times(const Integer& n) const {
    GwElement x(field_);
    x.rank_ = rank_ * n;
    x.aux_ = field_.kind() == Kind::Finite ? mod2(aux_ * n) : Integer(aux_ * n);
    return x;
}

std::optional<GwElement> GwElement::divides(const GwElement& target) const {
    require_same_field(target);
    switch (field_.kind()) {
    case Kind::QuadraticallyClosed: {
        auto s = solve_scalar(rank_, target.rank_);
        if (!s.possible) return std::nullopt;
        return from_invariants(field_, s.value);
    }
    case Kind::RealClosed: {
        // GW(R) sits inside Z x Z via (rank, signature) with matching parity.
        auto r = solve_scalar(rank_, target.rank_);
        auto s = solve_scalar(aux_, target.aux_);
        if (!r.possible || !s.possible) return std::nullopt;
        if (r.free && s.free) return zero(field_);
        if (r.free) return from_invariants(field_, s.value, s.value);
        if (s.free) return from_invariants(field_, r.value, r.value);
        if (mod2(r.value - s.value) != 0) return std::nullopt;
        return from_invariants(field_, r.value, s.value);
    }
    case Kind::Finite: {
        // (r, c) * (a, b) = (r a, r b + a c mod 2)
        const Integer& r = rank_;
        const Integer& c = aux_;
        if (r != 0) {
            if (target.rank_ % r != 0) return std::nullopt;
            Integer a = target.rank_ / r;
            Integer need = mod2(target.aux_ - a * c);
            if (mod2(r) == 1) return from_invariants(field_, a, need);
            if (need != 0) return std::nullopt;
            return from_invariants(field_, a, 0);
        }
        if (target.rank_ != 0) return std::nullopt;
        if (c == 1) return from_invariants(field_, target.aux_, 0);
        if (target.aux_ != 0) return std::nullopt;
        return zero(field_);
    }
    }
    return std::nullopt;
}

std::vector<GwElement> GwElement::units(const Field& field) {
    const GwElement one = GwElement::one(field);
    if (field.kind() == Kind::QuadraticallyClosed) return {one, -one};
    const GwElement other = from_class(SquareClass::nontrivial(field));
    return {one, other, -one, -other};
}

std::string GwElement::to_string() const {
    if (is_zero()) return "0";
    const GwElement h = hyperbolic(field_);
    if (rank_ % 2 == 0 && h.times(rank_ / 2) == *this) {
        Integer k = rank_ / 2;
        if (k == 1) return "H";
        if (k == -1) return "-H";
        return k.str() + "H";
    }
    switch (field_.kind()) {
    case Kind::QuadraticallyClosed: return two_term(rank_, "<1>", 0, "");
    case Kind::RealClosed: return two_term((rank_ + aux_) / 2, "<1>", (rank_ - aux_) / 2, "<-1>");
    case Kind::Finite: return two_term(rank_ - aux_, "<1>", aux_, "<u>");
    }
    return "?";
}

// ---------------------------------------------------------------------------

EtaleFactor EtaleFactor::quadratic(const SquareClass& d) {
    if (d.is_trivial()) {
        throw Error(ErrorCode::InvalidArgument, "quadratic factor with trivial discriminant splits as rational x rational");
    }
    return EtaleFactor(d.field(), d);
}

GwElement n_epsilon(std::int64_t n, const Field& field) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n_eps requires n >= 0, got " + std::to_string(n));
    const GwElement plus = GwElement::one(field);
    const GwElement minus = GwElement::from_class(SquareClass::minus_one(field));
    return plus.times((n + 1) / 2) + minus.times(n / 2);
}

GwElement hyperbolic(const Field& field) { return GwElement::hyperbolic(field); }

GwElement euler_class_p1_bundle(std::int64_t d, const Field& field) {
    if (d % 2 != 0) {
        throw Error(ErrorCode::OddDegree,
                    "O(" + std::to_string(d) + ") on P^1 is not orientable; quadratic Euler class undefined");
    }
    return hyperbolic(field).times(d / 2);
}

GwElement trace_form_class(const EtaleAlgebra& algebra) {
    GwElement total = GwElement::zero(algebra.field);
    const SquareClass two = SquareClass::two(algebra.field);
    for (const auto& factor : algebra.factors) {
        if (!(factor.field() == algebra.field)) {
            throw Error(ErrorCode::WrongField, "etale factor over a different field");
        }
        if (factor.is_rational()) {
            total += GwElement::one(algebra.field);
        } else {
            total += GwElement::from_class(two) + GwElement::from_class(two * *factor.discriminant());
        }
    }
    return total;
}

GwElement quadratic_intersection_degree(const Field& field, std::span<const LocalIntersection> points) {
    GwElement total = GwElement::zero(field);
    for (const auto& point : points) {
        if (point.multiplicity < 1) {
            throw Error(ErrorCode::InvalidArgument,
                        "intersection multiplicity must be positive, got " + std::to_string(point.multiplicity));
        }
        if (!(point.residue.field == field)) throw Error(ErrorCode::WrongField, "intersection point over a different field");
        total += n_epsilon(point.multiplicity, field) * trace_form_class(point.residue);
    }
    return total;
}

}  // namespace motinf::gw
