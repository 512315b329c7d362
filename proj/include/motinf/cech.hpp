#pragma once

#include "motinf/tate_complex.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace motinf::motives {

/// Motive of a stratum X'_J of a crossing scheme, in the rank realization:
/// P1 contributes 1 ⊕ 1(1)[2], Points(c) c copies of 1, Artin(r) r copies
/// of 1 labeled by the stratum's label.
struct Stratum {
    enum class Kind : std::uint8_t { P1, Points, Artin };

    Kind kind = Kind::Points;
    std::int64_t count = 1;  // Points: number of rational points; Artin: rank
    std::string label;       // Artin only

    static Stratum p1() { return {Kind::P1, 1, {}}; }
    static Stratum points(std::int64_t n = 1) { return {Kind::Points, n, {}}; }
    static Stratum artin(std::int64_t rank, std::string label) { return {Kind::Artin, rank, std::move(label)}; }

    std::vector<Generator> generators() const;

    friend bool operator==(const Stratum&, const Stratum&) = default;
};

/// Index subset J of the cover, listed by element id.
using Subset = std::vector<int>;

/// Explicit pushforward X'_source -> X'_target with target = source minus
/// one element; a dim(target) x dim(source) matrix.
struct FaceOverride {
    Subset source;
    Subset target;
    IntMatrix matrix;
};

struct CechComplex {
    TateComplex complex;
    /// Subsets spanning each term, in the order their generators appear.
    std::vector<std::vector<Subset>> term_subsets;
};

/// Ordered Čech complex: term n = ⊕_{#J = n+1} X'_J, d_n = Σ_k (-1)^k δ_n^k
/// with δ_n^k dropping the k-th element of K under `order`. Faces between P1
/// and Points strata are filled in automatically; any face touching an Artin
/// stratum must come from `faces` (else Error(MissingFaceData)). Overrides
/// are checked against the semi-simplicial identities
/// (Error(InconsistentFaceData) naming (n, k)).
CechComplex ordered_cech_complex(const std::vector<int>& order, const std::map<Subset, Stratum>& strata,
                                 std::span<const FaceOverride> faces = {});

struct CechInput {
    std::vector<int> order;
    std::map<Subset, Stratum> strata;
    std::vector<FaceOverride> faces;
};

/// {"order":[...]?, "strata":[{"J":[...],"kind":"p1|point|artin","count"?,"rank"?,"label"?}],
///  "faces":[{"from":[...],"to":[...],"matrix":[[...]]}]?}
CechInput cech_input_from_record(const nlohmann::json& record);
nlohmann::json to_record(const CechInput& input);

}  // namespace motinf::motives
