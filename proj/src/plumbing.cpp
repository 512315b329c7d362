#include "motinf/plumbing.hpp"

#include "json_util.hpp"
#include "motinf/gw_records.hpp"

#include <algorithm>
#include <set>

namespace motinf::plumbing {

using motives::ArtinTateMotive;
using motives::TateSummand;

PlumbingGraph::PlumbingGraph(gw::Field field, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : field_(field), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& edge = edges_[e];
        const std::string path = "edges[" + std::to_string(e) + "]";
        if (edge.i >= vertices_.size() || edge.j >= vertices_.size()) {
            throw Error(ErrorCode::InvalidArgument, "vertex index out of range at " + path);
        }
        if (edge.i == edge.j) throw Error(ErrorCode::InvalidArgument, "self-edge at " + path);
        if (edge.i > edge.j) throw Error(ErrorCode::InvalidArgument, "edge endpoints not increasing (i < j) at " + path);
        if (!seen.emplace(edge.i, edge.j).second) throw Error(ErrorCode::InvalidArgument, "repeated edge at " + path);
        if (edge.points.empty()) throw Error(ErrorCode::InvalidArgument, "edge without intersection points at " + path);
        for (std::size_t k = 0; k < edge.points.size(); ++k) {
            const auto& pt = edge.points[k];
            const std::string ppath = path + ".points[" + std::to_string(k) + "]";
            if (pt.multiplicity < 1) throw Error(ErrorCode::InvalidArgument, "multiplicity must be >= 1 at " + ppath);
            if (!(pt.residue.field() == field_)) throw Error(ErrorCode::WrongField, "residue field mismatch at " + ppath);
            if (pt.unit_override) {
                if (!(pt.unit_override->field() == field_)) {
                    throw Error(ErrorCode::WrongField, "unit override field mismatch at " + ppath);
                }
                if (!pt.unit_override->is_unit()) {
                    throw Error(ErrorCode::InvalidArgument, "unit override " + pt.unit_override->to_string() +
                                                                " is not a unit at " + ppath);
                }
            }
        }
    }
}

std::size_t PlumbingGraph::point_count() const {
    std::size_t n = 0;
    for (const auto& e : edges_) n += e.points.size();
    return n;
}

bool PlumbingGraph::all_points_rational() const {
    for (const auto& e : edges_) {
        for (const auto& p : e.points) {
            if (!p.residue.is_rational()) return false;
        }
    }
    return true;
}

bool PlumbingGraph::all_weights_even() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.self_intersection % 2 == 0; });
}

PlumbingGraph PlumbingGraph::relabeled(std::span<const std::size_t> perm) const {
    if (perm.size() != vertices_.size()) throw Error(ErrorCode::InvalidArgument, "permutation size mismatch");
    std::vector<Vertex> vs(vertices_.size());
    std::vector<bool> used(vertices_.size(), false);
    for (std::size_t v = 0; v < perm.size(); ++v) {
        if (perm[v] >= perm.size() || used[perm[v]]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
        used[perm[v]] = true;
        vs[perm[v]] = vertices_[v];
    }
    std::vector<Edge> es = edges_;
    for (auto& e : es) {
        e.i = perm[e.i];
        e.j = perm[e.j];
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    return PlumbingGraph(field_, std::move(vs), std::move(es));
}

IntMatrix incidence_matrix(const PlumbingGraph& g) {
    IntMatrix n(g.point_count(), g.vertices().size());
    std::size_t row = 0;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const Edge& edge = g.edges()[e];
        for (std::size_t k = 0; k < edge.points.size(); ++k) {
            if (!edge.points[k].residue.is_rational()) {
                throw Error(ErrorCode::NonRationalPoint,
                            "non-rational intersection point at edges[" + std::to_string(e) + "].points[" +
                                std::to_string(k) +
                                "]: the incidence/homology path needs rational points (the GW matrix is still available)");
            }
            n(row, edge.i) = 1;
            n(row, edge.j) = -1;
            ++row;
        }
    }
    return n;
}

namespace {

gw::GwElement point_contribution(const gw::Field& field, const IntersectionPoint& pt) {
    const gw::LocalIntersection local{pt.multiplicity, gw::EtaleAlgebra{field, {pt.residue}}};
    gw::GwElement x = gw::quadratic_intersection_degree(field, std::span(&local, 1));
    if (pt.unit_override) x = x * *pt.unit_override;
    return x;
}

}  // namespace

gw::GwMatrix mumford_matrix(const PlumbingGraph& g) {
    const std::size_t n = g.vertices().size();
    gw::GwMatrix mu(g.field(), n, n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto d = g.vertices()[v].self_intersection;
        if (d % 2 != 0) {
            throw Error(ErrorCode::OddSelfIntersection,
                        "vertices[" + std::to_string(v) + "] ('" + g.vertices()[v].name + "') has odd self-intersection " +
                            std::to_string(d) + "; the quadratic Mumford matrix needs even weights (use rank-only mode)");
        }
        mu(v, v) = gw::euler_class_p1_bundle(d, g.field());
    }
    for (const auto& e : g.edges()) {
        gw::GwElement total = gw::GwElement::zero(g.field());
        for (const auto& pt : e.points) total += point_contribution(g.field(), pt);
        mu(e.i, e.j) = total;
        mu(e.j, e.i) = total;
    }
    return mu;
}

IntMatrix classical_mumford_matrix(const PlumbingGraph& g) {
    const std::size_t n = g.vertices().size();
    IntMatrix mu(n, n);
    for (std::size_t v = 0; v < n; ++v) mu(v, v) = g.vertices()[v].self_intersection;
    for (const auto& e : g.edges()) {
        Integer total = 0;
        for (const auto& pt : e.points) {
            Integer x = Integer(pt.multiplicity) * pt.residue.degree();
            if (pt.unit_override) x *= pt.unit_override->rank();
            total += x;
        }
        mu(e.i, e.j) = total;
        mu(e.j, e.i) = total;
    }
    return mu;
}

BoundaryDecomposition boundary_motive_decomposition(const PlumbingGraph& g) {
    const IntMatrix n = incidence_matrix(g);
    std::vector<motives::Generator> vertices(g.vertices().size(), motives::Generator{0, {}});
    std::vector<motives::Generator> points(n.rows(), motives::Generator{0, {}});
    std::vector<std::vector<motives::Generator>> terms{std::move(vertices)};
    std::vector<IntMatrix> diffs;
    if (n.rows() > 0) {
        terms.push_back(std::move(points));
        diffs.push_back(n.transposed());
    }
    return {motives::TateComplex(std::move(terms), std::move(diffs)),
            ArtinTateMotive({TateSummand::free(g.vertices().size(), 1, 2)})};
}

namespace {

// Free summands and torsion of a cokernel, placed in twist q.
ArtinTateMotive as_motive(const motives::Cokernel& c, std::int64_t q) {
    std::vector<TateSummand> s{TateSummand::free(c.free_rank, q)};
    for (const auto& t : c.torsion) s.push_back(TateSummand::torsion(t, q));
    return ArtinTateMotive(std::move(s));
}

ArtinTateMotive extension(const ArtinTateMotive& sub, const ArtinTateMotive& quotient) {
    ArtinTateMotive m = sub + quotient;
    m.set_split_assumed(!sub.empty() && !quotient.empty());
    return m;
}

}  // namespace

InfinityHomology homology_at_infinity(const PlumbingGraph& g, bool quadratic) {
    InfinityHomology out;
    out.incidence = incidence_matrix(g);
    out.mumford_rank = classical_mumford_matrix(g);
    if (quadratic) {
        gw::GwMatrix mu = mumford_matrix(g);
        auto diag = gw::gw_diagonalize(mu);
        out.quadratic = QuadraticReport{std::move(mu), std::move(diag)};
    }

    // p : Z^points -> Z^vertices is Nᵀ; pᵀ : Z^vertices -> Z^points is N.
    out.incidence_snf = motives::smith_normal_form(out.incidence);
    out.mumford_snf = motives::smith_normal_form(out.mumford_rank);
    const std::size_t vertices = g.vertices().size();
    const std::size_t points = out.incidence.rows();
    const std::size_t rank_n = out.incidence_snf.rank();
    std::vector<Integer> torsion_n;
    for (const auto& d : out.incidence_snf.divisors()) {
        if (d > 1) torsion_n.push_back(d);
    }

    const motives::Cokernel coker_p{vertices - rank_n, torsion_n};
    const std::size_t ker_p = points - rank_n;
    const motives::Cokernel coker_pt{points - rank_n, torsion_n};
    const std::size_t ker_pt = vertices - rank_n;
    const motives::Cokernel coker_mu = motives::cokernel(out.mumford_snf);
    const std::size_t ker_mu = motives::kernel_rank(out.mumford_snf);

    out.H[0] = as_motive(coker_p, 0);
    out.H[1] = extension(as_motive(coker_mu, 1), ArtinTateMotive({TateSummand::free(ker_p, 0)}));
    out.H[2] = extension(as_motive(coker_pt, 2), ArtinTateMotive({TateSummand::free(ker_mu, 1)}));
    out.H[3] = ArtinTateMotive({TateSummand::free(ker_pt, 2)});

    out.boundary_homology = motives::complex_homology(boundary_motive_decomposition(g).combinatorial);

    for (std::size_t i = 0; i < out.H.size(); ++i) {
        if (out.H[i].split_assumed()) {
            out.warnings.push_back("split_assumed: H_" + std::to_string(i) +
                                   " is an extension reported as a direct sum; splitting is not verified");
        }
    }
    if (out.quadratic) {
        const auto& d = out.quadratic->diagonalization;
        if (d.residual_block) {
            out.warnings.push_back("residual_block: GW diagonalization left a " +
                                   std::to_string(d.residual_block->rows()) + "x" +
                                   std::to_string(d.residual_block->cols()) + " block without unit entries");
        }
    } else {
        out.warnings.push_back("rank_only: quadratic refinement of the Mumford matrix not computed");
    }
    return out;
}

motives::CechComplex cech_boundary_complex(const PlumbingGraph& g) {
    if (!g.all_points_rational()) incidence_matrix(g);  // throws with the offending path
    std::map<motives::Subset, motives::Stratum> strata;
    std::vector<int> order;
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        order.push_back(static_cast<int>(v));
        strata[{static_cast<int>(v)}] = motives::Stratum::p1();
    }
    for (const auto& e : g.edges()) {
        strata[{static_cast<int>(e.i), static_cast<int>(e.j)}] =
            motives::Stratum::points(static_cast<std::int64_t>(e.points.size()));
    }
    return motives::ordered_cech_complex(order, strata);
}

// ---------------------------------------------------------------------------

PlumbingGraph graph_from_record(const nlohmann::json& record, const std::optional<gw::Field>& field_override) {
    using detail::require;
    gw::Field field = gw::Field::real_closed();
    if (field_override) {
        field = *field_override;
    } else if (auto it = record.find("field"); it != record.end()) {
        field = gw::field_from_record(*it);
    }

    const auto& vs = require(record, "vertices", "graph");
    if (!vs.is_array()) throw Error(ErrorCode::Parse, "vertices: expected an array");
    std::vector<Vertex> vertices;
    for (std::size_t v = 0; v < vs.size(); ++v) {
        const std::string path = "vertices[" + std::to_string(v) + "]";
        Vertex vert;
        if (auto it = vs[v].find("name"); it != vs[v].end()) {
            if (!it->is_string()) throw Error(ErrorCode::Parse, path + ".name: expected a string");
            vert.name = it->get<std::string>();
        } else {
            vert.name = "v" + std::to_string(v);
        }
        vert.self_intersection = detail::int64_from_json(require(vs[v], "d", path), path + ".d");
        vertices.push_back(std::move(vert));
    }

    std::vector<Edge> edges;
    if (auto it = record.find("edges"); it != record.end()) {
        if (!it->is_array()) throw Error(ErrorCode::Parse, "edges: expected an array");
        for (std::size_t e = 0; e < it->size(); ++e) {
            const std::string path = "edges[" + std::to_string(e) + "]";
            const auto& ej = (*it)[e];
            Edge edge;
            const auto i = detail::int64_from_json(require(ej, "i", path), path + ".i");
            const auto j = detail::int64_from_json(require(ej, "j", path), path + ".j");
            if (i < 0 || j < 0) throw Error(ErrorCode::Parse, path + ": negative vertex index");
            edge.i = static_cast<std::size_t>(i);
            edge.j = static_cast<std::size_t>(j);
            if (edge.i == edge.j) throw Error(ErrorCode::Parse, "self-edge at " + path);
            const auto& pts = require(ej, "points", path);
            if (!pts.is_array()) throw Error(ErrorCode::Parse, path + ".points: expected an array");
            for (std::size_t k = 0; k < pts.size(); ++k) {
                const std::string ppath = path + ".points[" + std::to_string(k) + "]";
                const auto& pj = pts[k];
                std::int64_t m = 1;
                if (auto mit = pj.find("m"); mit != pj.end()) m = detail::int64_from_json(*mit, ppath + ".m");
                if (m < 1) throw Error(ErrorCode::Parse, ppath + ".m: multiplicity must be >= 1, got " + std::to_string(m));
                gw::EtaleFactor residue = gw::EtaleFactor::rational(field);
                if (auto rit = pj.find("residue"); rit != pj.end()) {
                    if (rit->is_string() && rit->get<std::string>() == "rational") {
                        // default
                    } else if (rit->is_object() && rit->contains("quadratic") && (*rit)["quadratic"].is_string()) {
                        try {
                            residue = gw::EtaleFactor::quadratic(
                                gw::SquareClass::parse(field, (*rit)["quadratic"].get<std::string>()));
                        } catch (const Error& err) {
                            throw Error(ErrorCode::Parse, ppath + ".residue: " + err.what());
                        }
                    } else {
                        throw Error(ErrorCode::Parse, ppath + ".residue: expected \"rational\" or {\"quadratic\": token}");
                    }
                }
                std::optional<gw::GwElement> unit;
                if (auto uit = pj.find("unit"); uit != pj.end()) {
                    try {
                        unit = gw::gw_from_record(*uit, field);
                    } catch (const Error& err) {
                        throw Error(ErrorCode::Parse, ppath + ".unit: " + err.what());
                    }
                }
                edge.points.push_back({m, std::move(residue), std::move(unit)});
            }
            edges.push_back(std::move(edge));
        }
    }
    return PlumbingGraph(field, std::move(vertices), std::move(edges));
}

nlohmann::json to_record(const PlumbingGraph& g) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : g.vertices()) vertices.push_back({{"name", v.name}, {"d", v.self_intersection}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) {
        nlohmann::json points = nlohmann::json::array();
        for (const auto& p : e.points) {
            nlohmann::json pj{{"m", p.multiplicity}};
            if (p.residue.is_rational()) {
                pj["residue"] = "rational";
            } else {
                pj["residue"] = {{"quadratic", p.residue.discriminant()->token()}};
            }
            if (p.unit_override) {
                auto u = gw::to_record(*p.unit_override);
                u.erase("field");
                pj["unit"] = std::move(u);
            }
            points.push_back(std::move(pj));
        }
        edges.push_back({{"i", e.i}, {"j", e.j}, {"points", std::move(points)}});
    }
    return {{"field", gw::to_record(g.field())}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

}  // namespace motinf::plumbing
