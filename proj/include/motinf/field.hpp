#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace motinf::gw {

/// Base field k of the Grothendieck-Witt computations. Only fields with a
/// decidable complete invariant for symmetric bilinear forms are supported.
class Field {
public:
    enum class Kind : std::uint8_t { QuadraticallyClosed, RealClosed, Finite };

    static Field quadratically_closed() { return Field(Kind::QuadraticallyClosed, 0, 0); }
    static Field real_closed() { return Field(Kind::RealClosed, 0, 0); }
    /// q must be an odd prime power below 2^31; throws Error(InvalidField) otherwise.
    static Field finite(std::uint64_t q);
    /// Accepts "qc", "rc", "fq:<q>".
    static Field parse(const std::string& text);

    Kind kind() const noexcept { return kind_; }
    std::uint64_t order() const noexcept { return q_; }
    std::uint64_t characteristic() const noexcept { return p_; }

    bool minus_one_is_square() const noexcept;
    bool two_is_square() const noexcept;

    std::string to_string() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    Field(Kind kind, std::uint64_t q, std::uint64_t p) : kind_(kind), q_(q), p_(p) {}

    Kind kind_;
    std::uint64_t q_;
    std::uint64_t p_;
};

/// Element arithmetic in F_q, elements encoded as base-p digit strings of a
/// polynomial modulo a fixed monic irreducible of degree e (q = p^e).
class FiniteFieldArithmetic {
public:
    explicit FiniteFieldArithmetic(const Field& field);

    std::uint64_t order() const noexcept { return q_; }
    std::uint64_t characteristic() const noexcept { return p_; }

    /// Image of an integer in the prime field.
    std::uint64_t from_integer(std::int64_t a) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    bool is_square(std::uint64_t a) const;
    /// Smallest encoded nonsquare.
    std::uint64_t nonsquare() const;

private:
    std::vector<std::uint64_t> digits(std::uint64_t a) const;
    std::uint64_t encode(const std::vector<std::uint64_t>& d) const;

    std::uint64_t q_;
    std::uint64_t p_;
    unsigned degree_;
    std::vector<std::uint64_t> modulus_;  // low-to-high, monic, size degree_+1
};

}  // namespace motinf::gw
