#include "motinf/field.hpp"

#include "motinf/error.hpp"

#include <charconv>
#include <limits>

namespace motinf::gw {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;

// Smallest prime factor of n > 1.
std::uint64_t smallest_prime_factor(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return d;
    }
    return n;
}

}  // namespace

Field Field::finite(std::uint64_t q) {
    if (q < 3 || q % 2 == 0) {
        throw Error(ErrorCode::InvalidField, "finite field order must be an odd prime power, got " + std::to_string(q));
    }
    if (q >= kMaxOrder) {
        throw Error(ErrorCode::InvalidField, "finite field order too large: " + std::to_string(q));
    }
    const std::uint64_t p = smallest_prime_factor(q);
    std::uint64_t rest = q;
    while (rest % p == 0) rest /= p;
    if (rest != 1) {
        throw Error(ErrorCode::InvalidField, "finite field order must be an odd prime power, got " + std::to_string(q));
    }
    return Field(Kind::Finite, q, p);
}

Field Field::parse(const std::string& text) {
    if (text == "qc") return quadratically_closed();
    if (text == "rc") return real_closed();
    if (text.rfind("fq:", 0) == 0) {
        std::uint64_t q = 0;
        const char* first = text.data() + 3;
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, q);
        if (ec != std::errc() || ptr != last || first == last) {
            throw Error(ErrorCode::InvalidField, "malformed field order in '" + text + "'");
        }
        return finite(q);
    }
    throw Error(ErrorCode::InvalidField, "unknown field '" + text + "' (expected qc, rc or fq:<q>)");
}

bool Field::minus_one_is_square() const noexcept {
    switch (kind_) {
    case Kind::QuadraticallyClosed: return true;
    case Kind::RealClosed: return false;
    case Kind::Finite: return q_ % 4 == 1;
    }
    return false;
}

bool Field::two_is_square() const noexcept {
    switch (kind_) {
    case Kind::QuadraticallyClosed:
    case Kind::RealClosed: return true;
    case Kind::Finite: return q_ % 8 == 1 || q_ % 8 == 7;
    }
    return false;
}

std::string Field::to_string() const {
    switch (kind_) {
    case Kind::QuadraticallyClosed: return "qc";
    case Kind::RealClosed: return "rc";
    case Kind::Finite: return "fq:" + std::to_string(q_);
    }
    return "?";
}

// ---------------------------------------------------------------------------

FiniteFieldArithmetic::FiniteFieldArithmetic(const Field& field) {
    if (field.kind() != Field::Kind::Finite) {
        throw Error(ErrorCode::WrongField, "finite field arithmetic requires a finite field, got " + field.to_string());
    }
    q_ = field.order();
    p_ = field.characteristic();
    degree_ = 0;
    for (std::uint64_t r = q_; r > 1; r /= p_) ++degree_;

    if (degree_ == 1) {
        modulus_ = {0, 1};
        return;
    }

    // Remainder of monic f modulo monic g, both low-to-high.
    auto remainder = [this](std::vector<std::uint64_t> f, const std::vector<std::uint64_t>& g) {
        const std::size_t dg = g.size() - 1;
        for (std::size_t i = f.size(); i-- > dg;) {
            const std::uint64_t c = f[i];
            if (c == 0) continue;
            for (std::size_t k = 0; k <= dg; ++k) {
                f[i - dg + k] = (f[i - dg + k] + (p_ - c) * g[k]) % p_;
            }
        }
        f.resize(dg);
        return f;
    };
    auto monic_of = [this](std::uint64_t code, unsigned deg) {
        std::vector<std::uint64_t> g(deg + 1, 0);
        for (unsigned k = 0; k < deg; ++k) {
            g[k] = code % p_;
            code /= p_;
        }
        g[deg] = 1;
        return g;
    };

    std::uint64_t tail_count = 1;
    for (unsigned k = 0; k < degree_; ++k) tail_count *= p_;
    for (std::uint64_t code = 0; code < tail_count; ++code) {
        auto f = monic_of(code, degree_);
        if (f[0] == 0) continue;
        bool irreducible = true;
        for (unsigned dg = 1; irreducible && 2 * dg <= degree_; ++dg) {
            std::uint64_t count = 1;
            for (unsigned k = 0; k < dg; ++k) count *= p_;
            for (std::uint64_t gc = 0; gc < count; ++gc) {
                auto rem = remainder(f, monic_of(gc, dg));
                bool zero = true;
                for (auto c : rem) zero = zero && c == 0;
                if (zero) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) {
            modulus_ = std::move(f);
            return;
        }
    }
    throw Error(ErrorCode::InvalidField, "no irreducible polynomial found for " + field.to_string());
}

std::vector<std::uint64_t> FiniteFieldArithmetic::digits(std::uint64_t a) const {
    std::vector<std::uint64_t> d(degree_, 0);
    for (unsigned k = 0; k < degree_; ++k) {
        d[k] = a % p_;
        a /= p_;
    }
    return d;
}

std::uint64_t FiniteFieldArithmetic::encode(const std::vector<std::uint64_t>& d) const {
    std::uint64_t a = 0;
    for (std::size_t k = d.size(); k-- > 0;) a = a * p_ + d[k];
    return a;
}

std::uint64_t FiniteFieldArithmetic::from_integer(std::int64_t a) const {
    const auto p = static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(((a % p) + p) % p);
}

std::uint64_t FiniteFieldArithmetic::add(std::uint64_t a, std::uint64_t b) const {
    if (degree_ == 1) return (a + b) % p_;
    auto da = digits(a);
    auto db = digits(b);
    for (unsigned k = 0; k < degree_; ++k) da[k] = (da[k] + db[k]) % p_;
    return encode(da);
}

std::uint64_t FiniteFieldArithmetic::mul(std::uint64_t a, std::uint64_t b) const {
    if (degree_ == 1) return (a * b) % p_;
    const auto da = digits(a);
    const auto db = digits(b);
    std::vector<std::uint64_t> prod(2 * degree_ - 1, 0);
    for (unsigned i = 0; i < degree_; ++i) {
        for (unsigned j = 0; j < degree_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (std::size_t i = prod.size(); i-- > degree_;) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        for (unsigned k = 0; k <= degree_; ++k) {
            prod[i - degree_ + k] = (prod[i - degree_ + k] + (p_ - c) * modulus_[k]) % p_;
        }
    }
    prod.resize(degree_);
    return encode(prod);
}

std::uint64_t FiniteFieldArithmetic::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1;
    while (e > 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

bool FiniteFieldArithmetic::is_square(std::uint64_t a) const {
    if (a == 0) return true;
    return pow(a, (q_ - 1) / 2) == 1;
}

std::uint64_t FiniteFieldArithmetic::nonsquare() const {
    for (std::uint64_t a = 2; a < q_; ++a) {
        if (!is_square(a)) return a;
    }
    throw Error(ErrorCode::InvalidField, "no nonsquare found");
}

}  // namespace motinf::gw
