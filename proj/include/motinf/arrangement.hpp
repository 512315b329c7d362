#pragma once

#include "motinf/integer.hpp"
#include "motinf/motive.hpp"

#include "json.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace motinf::arrangement {

/// Affine hyperplane a·x = b in A^d.
struct Hyperplane {
    std::vector<Rational> normal;
    Rational constant;
};

class Arrangement {
public:
    /// Rejects d < 1, wrong vector lengths, zero normals and repeated
    /// hyperplanes (proportional (a, b)).
    Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Hyperplane>& hyperplanes() const noexcept { return hyperplanes_; }

private:
    std::size_t dim_;
    std::vector<Hyperplane> hyperplanes_;
};

struct StratumRow {
    std::vector<std::size_t> subset;  // 0-based hyperplane indices, increasing
    std::size_t n = 0;                // #J
    std::size_t c = 0;                // rank of the normals in J

    friend bool operator==(const StratumRow&, const StratumRow&) = default;
};

struct StratumTable {
    std::size_t dim = 0;
    /// Subsets with nonempty intersection, ordered by (#J, J); the empty
    /// subset comes first.
    std::vector<StratumRow> rows;
    bool nc_flag = true;
    /// m(n) = number of rows with #J = n, index n = 0..max; set when nc_flag.
    std::optional<std::vector<std::size_t>> m_profile;
};

constexpr std::size_t max_hyperplanes = 20;

/// Exhaustive enumeration of the subsets J with D_J nonempty, exact over Q.
/// Throws Error(TooManyHyperplanes) beyond max_hyperplanes.
StratumTable stratum_table(const Arrangement& a);

/// ⊕_J 1(c_J)[2c_J - n_J].
motives::ArtinTateMotive homotopy_type(const StratumTable& t);
/// ⊕_K 1(d - c_K)[2(d - c_K) + n_K].
motives::ArtinTateMotive compact_support_type(const StratumTable& t);
/// homotopy_type ⊕ compact_support_type[-1].
motives::ArtinTateMotive homotopy_type_at_infinity(const StratumTable& t);

/// Closed forms in the normal crossing case, driven by m(n) only:
/// ⊕ m(n) 1(n)[n], ⊕ m(n) 1(d-n)[2d-n], and their sum with the second shifted by -1.
/// Require t.m_profile.
motives::ArtinTateMotive homotopy_type_nc(const StratumTable& t);
motives::ArtinTateMotive compact_support_type_nc(const StratumTable& t);
motives::ArtinTateMotive homotopy_type_at_infinity_nc(const StratumTable& t);

/// {"dim": d, "hyperplanes": [[a_1, ..., a_d, b], ...]}; entries are integers
/// or "p/q" strings.
Arrangement arrangement_from_record(const nlohmann::json& record);
nlohmann::json to_record(const Arrangement& a);
nlohmann::json to_record(const StratumTable& t);

}  // namespace motinf::arrangement
