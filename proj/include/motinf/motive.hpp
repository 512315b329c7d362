#pragma once

#include "motinf/integer.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace motinf::motives {

/// One summand 1(q)[p], (1/n)(q)[p] or an Artin piece M(label)(q)[p].
struct TateSummand {
    enum class Kind : std::uint8_t { Free, Torsion, Artin };

    Kind kind = Kind::Free;
    /// Free: multiplicity; Torsion: order n >= 2; Artin: rank >= 1.
    Integer count = 1;
    std::string label;  // Artin only
    std::int64_t twist = 0;
    std::int64_t shift = 0;

    static TateSummand free(Integer mult, std::int64_t q = 0, std::int64_t p = 0) {
        return {Kind::Free, std::move(mult), {}, q, p};
    }
    static TateSummand torsion(Integer n, std::int64_t q = 0, std::int64_t p = 0) {
        return {Kind::Torsion, std::move(n), {}, q, p};
    }
    static TateSummand artin(Integer rank, std::string label, std::int64_t q = 0, std::int64_t p = 0) {
        return {Kind::Artin, std::move(rank), std::move(label), q, p};
    }

    friend bool operator==(const TateSummand&, const TateSummand&) = default;
};

/// Canonical order: (kind, twist, shift, count, label).
bool canonical_less(const TateSummand& a, const TateSummand& b);

/// Formal direct sum of Tate summands, always held in canonical form: Free
/// summands with equal (q, p) are merged, Free(0) is dropped, the list is
/// sorted. `split_assumed` records that some extension was reported as split.
class ArtinTateMotive {
public:
    ArtinTateMotive() = default;
    explicit ArtinTateMotive(std::vector<TateSummand> summands, bool split_assumed = false);

    static ArtinTateMotive unit() { return ArtinTateMotive({TateSummand::free(1)}); }

    const std::vector<TateSummand>& summands() const noexcept { return summands_; }
    bool split_assumed() const noexcept { return split_assumed_; }
    bool empty() const noexcept { return summands_.empty(); }

    void set_split_assumed(bool flag) { split_assumed_ = flag; }

    /// Total multiplicity of free summands 1(q)[p] over all (q, p).
    Integer free_rank() const;
    /// Shifts every summand's twist by dq and shift by dp.
    ArtinTateMotive twisted(std::int64_t dq, std::int64_t dp = 0) const;

    ArtinTateMotive operator+(const ArtinTateMotive& other) const;
    ArtinTateMotive& operator+=(const ArtinTateMotive& other) { return *this = *this + other; }

    friend bool operator==(const ArtinTateMotive&, const ArtinTateMotive&) = default;

private:
    void canonicalize();

    std::vector<TateSummand> summands_;
    bool split_assumed_ = false;
};

/// "1 + 2*1(1)[1] + (1/2)(1)"; the zero motive prints as "0".
std::string pretty(const ArtinTateMotive& m);

/// Canonical record {"summands":[...],"split_assumed":bool}.
nlohmann::json to_record(const ArtinTateMotive& m);
/// Throws Error(Parse) on malformed records.
ArtinTateMotive motive_from_record(const nlohmann::json& record);

}  // namespace motinf::motives
