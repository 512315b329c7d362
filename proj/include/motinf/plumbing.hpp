#pragma once

#include "motinf/cech.hpp"
#include "motinf/gw_matrix.hpp"
#include "motinf/motive.hpp"
#include "motinf/smith.hpp"
#include "motinf/tate_complex.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace motinf::plumbing {

/// A rational boundary branch with normal bundle O(d).
struct Vertex {
    std::string name;
    std::int64_t self_intersection = 0;
};

struct IntersectionPoint {
    std::int64_t multiplicity = 1;
    gw::EtaleFactor residue;
    /// Optional unit multiplying this point's contribution to μ (orientation choice).
    std::optional<gw::GwElement> unit_override;
};

struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<IntersectionPoint> points;
};

/// Decorated dual graph of a normal crossing boundary. The vertex order is
/// part of the data; every edge has i < j in that order.
class PlumbingGraph {
public:
    /// Validates: i < j (self-edges and reversed edges rejected), indices in
    /// range, no repeated pair, at least one point per edge, multiplicities
    /// >= 1, overrides are units, everything over `field`. Messages name the
    /// offending path, e.g. "self-edge at edges[0]".
    PlumbingGraph(gw::Field field, std::vector<Vertex> vertices, std::vector<Edge> edges);

    const gw::Field& field() const noexcept { return field_; }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t point_count() const;
    bool all_points_rational() const;
    bool all_weights_even() const;

    /// Same boundary with vertex v moved to position perm[v]; edge endpoints
    /// are reoriented so that i < j still holds.
    PlumbingGraph relabeled(std::span<const std::size_t> perm) const;

private:
    gw::Field field_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
};

/// One row per intersection point (edges in order, points in order), one
/// column per vertex: +1 at i, -1 at j. Throws Error(NonRationalPoint) for
/// points with a quadratic residue.
IntMatrix incidence_matrix(const PlumbingGraph& g);

/// Quadratic Mumford matrix: μ_ii = Euler class of O(d_i), μ_ij = quadratic
/// intersection degree of the points on edge (i, j). Throws
/// Error(OddSelfIntersection) if some d_i is odd.
gw::GwMatrix mumford_matrix(const PlumbingGraph& g);

/// Classical (rank) Mumford matrix; defined for all weights.
IntMatrix classical_mumford_matrix(const PlumbingGraph& g);

struct BoundaryDecomposition {
    /// Two-term complex C_0 = ⊕_vertices 1 <- C_1 = ⊕_points 1 with d_1 = Nᵀ.
    motives::TateComplex combinatorial;
    /// #vertices · 1(1)[2].
    motives::ArtinTateMotive geometric;
};

BoundaryDecomposition boundary_motive_decomposition(const PlumbingGraph& g);

struct QuadraticReport {
    gw::GwMatrix mumford;
    gw::DiagonalizationResult diagonalization;
};

struct InfinityHomology {
    std::array<motives::ArtinTateMotive, 4> H;
    IntMatrix incidence;
    IntMatrix mumford_rank;
    motives::SnfResult incidence_snf;
    motives::SnfResult mumford_snf;
    std::vector<motives::ArtinTateMotive> boundary_homology;
    std::optional<QuadraticReport> quadratic;
    std::vector<std::string> warnings;
};

/// Homology motives at infinity from the six-term exact sequence:
///   H_0 = coker(p), 0 -> coker(μ)(1) -> H_1 -> ker(p) -> 0,
///   0 -> coker(pᵀ)(2) -> H_2 -> ker(μ)(1) -> 0, H_3 = ker(pᵀ)(2),
/// with p : ⊕_points 1 -> ⊕_vertices 1 given by Nᵀ and μ its rank
/// realization. Extensions with both ends nonzero are reported split and
/// flagged. With `quadratic` set, μ is also diagonalized over GW(k), which
/// requires even weights.
InfinityHomology homology_at_infinity(const PlumbingGraph& g, bool quadratic = true);

/// Ordered Čech complex of the boundary: P1 per vertex, one Points stratum
/// per edge, vertex order as the cover order.
motives::CechComplex cech_boundary_complex(const PlumbingGraph& g);

/// {"field":"rc","vertices":[{"name":..,"d":..}],"edges":[{"i":..,"j":..,
///  "points":[{"m":1,"residue":"rational"|{"quadratic":"<token>"},
///  "unit":{"rank":..,"sig"?:..,"disc_bit"?:..}?}]}]}
/// `field_override`, when given, replaces the record's field.
PlumbingGraph graph_from_record(const nlohmann::json& record, const std::optional<gw::Field>& field_override = {});
nlohmann::json to_record(const PlumbingGraph& g);

}  // namespace motinf::plumbing
