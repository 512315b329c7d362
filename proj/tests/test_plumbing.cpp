#include "doctest.h"
#include "oracles.hpp"

#include "motinf/error.hpp"
#include "motinf/gw_records.hpp"
#include "motinf/plumbing.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>

using namespace motinf;
using gw::Field;
using gw::GwElement;
using motives::ArtinTateMotive;
using motives::TateSummand;
using plumbing::Edge;
using plumbing::IntersectionPoint;
using plumbing::PlumbingGraph;
using plumbing::Vertex;

namespace {

const Field rc = Field::real_closed();

nlohmann::json fixture(const std::string& name) {
    std::ifstream in(std::string(MOTINF_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

IntersectionPoint rational(const Field& f, std::int64_t m = 1) { return {m, gw::EtaleFactor::rational(f), std::nullopt}; }

PlumbingGraph simple_graph(const Field& f, const std::vector<std::int64_t>& weights,
                           const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < weights.size(); ++i) vs.push_back({"v" + std::to_string(i), weights[i]});
    std::vector<Edge> es;
    for (auto [i, j] : edges) es.push_back({i, j, {rational(f)}});
    return PlumbingGraph(f, vs, es);
}

// F_inf - C_inf - F_0, then two chains of n-1 (-2)-curves off F_0.
PlumbingGraph danielewski(std::size_t n, const Field& f = rc) {
    std::vector<std::int64_t> w{0, 0, -2};
    std::vector<std::pair<std::size_t, std::size_t>> e{{0, 1}, {1, 2}};
    for (std::size_t b = 0; b < 2; ++b) {
        std::size_t prev = 2;
        for (std::size_t k = 1; k < n; ++k) {
            const std::size_t idx = 3 + b * (n - 1) + (k - 1);
            e.emplace_back(prev, idx);
            prev = idx;
        }
    }
    w.resize(2 * n + 1, -2);
    return simple_graph(f, w, e);
}

ErrorCode code_of(const std::function<void()>& fn, std::string* message = nullptr) {
    try {
        fn();
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

ArtinTateMotive free1(std::int64_t q = 0, Integer mult = 1) { return ArtinTateMotive({TateSummand::free(mult, q)}); }

// Random connected or disconnected graph with even weights.
PlumbingGraph random_graph(std::mt19937_64& rng, const Field& f) {
    std::uniform_int_distribution<std::size_t> nv(1, 12);
    std::uniform_int_distribution<int> weight(-3, 2), coin(0, 3), mult(1, 3);
    const std::size_t n = nv(rng);
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i), 2 * weight(rng)});
    std::vector<Edge> es;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng) != 0) continue;
            Edge e{i, j, {}};
            for (int k = coin(rng) == 0 ? 2 : 1; k > 0; --k) e.points.push_back(rational(f, mult(rng)));
            es.push_back(std::move(e));
        }
    }
    return PlumbingGraph(f, vs, es);
}

}  // namespace

TEST_CASE("incidence matrices") {
    CHECK(plumbing::incidence_matrix(danielewski(1)) == IntMatrix{{1, -1, 0}, {0, 1, -1}});
    const auto three = plumbing::graph_from_record(fixture("three_lines.json"));
    CHECK(plumbing::incidence_matrix(three) == IntMatrix{{1, -1, 0}, {1, 0, -1}, {0, 1, -1}});
    const IntMatrix n2 = plumbing::incidence_matrix(danielewski(2));
    CHECK(n2.rows() == 4);
    CHECK(n2.cols() == 5);
    CHECK(motives::smith_normal_form(n2).divisors() == std::vector<Integer>(4, 1));
}

TEST_CASE("Mumford matrices") {
    const auto three = plumbing::graph_from_record(fixture("three_lines.json"));
    const gw::GwMatrix mu = plumbing::mumford_matrix(three);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(mu(i, j) == (i == j ? GwElement::zero(rc) : GwElement::one(rc)));
    }
    CHECK(plumbing::classical_mumford_matrix(three) == IntMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(plumbing::classical_mumford_matrix(danielewski(1)) == IntMatrix{{0, 1, 0}, {1, 0, 1}, {0, 1, -2}});

    const gw::GwMatrix mu3 = plumbing::mumford_matrix(danielewski(3));
    for (std::size_t i = 2; i < 7; ++i) CHECK(mu3(i, i) == -gw::hyperbolic(rc));
    CHECK(mu3(0, 0).is_zero());
    CHECK(mu3(1, 1).is_zero());

    const auto single = simple_graph(rc, {0}, {});
    CHECK(plumbing::mumford_matrix(single) == gw::GwMatrix(rc, 1, 1));
    CHECK(plumbing::classical_mumford_matrix(simple_graph(rc, {-1}, {})) == IntMatrix{{-1}});
}

TEST_CASE("odd weights need rank-only mode") {
    const auto g = simple_graph(rc, {-1, 0}, {{0, 1}});
    std::string message;
    CHECK(code_of([&] { plumbing::mumford_matrix(g); }, &message) == ErrorCode::OddSelfIntersection);
    CHECK(message.find("rank-only") != std::string::npos);
    CHECK(code_of([&] { plumbing::homology_at_infinity(g); }) == ErrorCode::OddSelfIntersection);
    const auto h = plumbing::homology_at_infinity(g, false);
    CHECK_FALSE(h.quadratic.has_value());
    // mu = [[-1, 1], [1, 0]] is unimodular; the graph is a tree.
    CHECK(h.H[0] == free1());
    CHECK(h.H[1].empty());
    CHECK(h.H[2].empty());
    CHECK(h.H[3] == free1(2));
}

TEST_CASE("non-rational points") {
    const gw::EtaleFactor c = gw::EtaleFactor::quadratic(gw::SquareClass::minus_one(rc));
    const PlumbingGraph g(rc, {{"a", 0}, {"b", 0}}, {{0, 1, {{1, c, std::nullopt}}}});
    CHECK(plumbing::mumford_matrix(g)(0, 1) == gw::hyperbolic(rc));
    CHECK(plumbing::classical_mumford_matrix(g)(0, 1) == 2);
    std::string message;
    CHECK(code_of([&] { plumbing::incidence_matrix(g); }, &message) == ErrorCode::NonRationalPoint);
    CHECK(message.find("edges[0].points[0]") != std::string::npos);
    CHECK(code_of([&] { plumbing::homology_at_infinity(g); }) == ErrorCode::NonRationalPoint);
    CHECK(code_of([&] { plumbing::cech_boundary_complex(g); }) == ErrorCode::NonRationalPoint);
}

TEST_CASE("unit overrides") {
    const GwElement minus = GwElement::from_class(gw::SquareClass::minus_one(rc));
    const PlumbingGraph g(rc, {{"a", 0}, {"b", 0}}, {{0, 1, {{3, gw::EtaleFactor::rational(rc), minus}}}});
    CHECK(plumbing::mumford_matrix(g)(0, 1) == gw::n_epsilon(3, rc) * minus);
    CHECK(plumbing::mumford_matrix(g)(1, 0) == plumbing::mumford_matrix(g)(0, 1));
    CHECK(code_of([&] {
              PlumbingGraph(rc, {{"a", 0}, {"b", 0}}, {{0, 1, {{1, gw::EtaleFactor::rational(rc), gw::hyperbolic(rc)}}}});
          }) == ErrorCode::InvalidArgument);
}

TEST_CASE("validation names the offending path") {
    std::string message;
    CHECK(code_of([&] { simple_graph(rc, {0}, {{0, 0}}); }, &message) == ErrorCode::InvalidArgument);
    CHECK(message == "self-edge at edges[0]");
    CHECK(code_of([&] { simple_graph(rc, {0, 0}, {{1, 0}}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { simple_graph(rc, {0, 0}, {{0, 1}, {0, 1}}); }, &message) == ErrorCode::InvalidArgument);
    CHECK(message.find("edges[1]") != std::string::npos);
    CHECK(code_of([&] { simple_graph(rc, {0, 0}, {{0, 2}}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { PlumbingGraph(rc, {{"a", 0}, {"b", 0}}, {{0, 1, {}}}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { PlumbingGraph(rc, {{"a", 0}, {"b", 0}}, {{0, 1, {rational(rc, 0)}}}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([&] { PlumbingGraph(rc, {{"a", 0}, {"b", 0}}, {{0, 1, {rational(Field::finite(5))}}}); }) ==
          ErrorCode::WrongField);

    auto rec = fixture("self_edge.json");
    CHECK(code_of([&] { plumbing::graph_from_record(rec); }, &message) == ErrorCode::Parse);
    CHECK(message == "self-edge at edges[0]");
    rec = fixture("three_lines.json");
    rec["edges"][1]["points"][0]["m"] = 0;
    CHECK(code_of([&] { plumbing::graph_from_record(rec); }, &message) == ErrorCode::Parse);
    CHECK(message.find("edges[1].points[0].m") != std::string::npos);
}

TEST_CASE("boundary decomposition") {
    const auto single = plumbing::boundary_motive_decomposition(simple_graph(rc, {0}, {}));
    CHECK(motives::complex_homology(single.combinatorial) == std::vector<ArtinTateMotive>{free1()});
    CHECK(single.geometric == ArtinTateMotive({TateSummand::free(1, 1, 2)}));

    const auto three = plumbing::boundary_motive_decomposition(plumbing::graph_from_record(fixture("three_lines.json")));
    CHECK(motives::complex_homology(three.combinatorial) == std::vector<ArtinTateMotive>{free1(), free1()});
    CHECK(three.geometric == ArtinTateMotive({TateSummand::free(3, 1, 2)}));

    for (std::size_t n = 1; n <= 4; ++n) {
        const auto d = plumbing::boundary_motive_decomposition(danielewski(n));
        const auto h = motives::complex_homology(d.combinatorial);
        CHECK(h[0] == free1());
        CHECK(h[1].empty());
        CHECK(d.geometric == ArtinTateMotive({TateSummand::free(2 * n + 1, 1, 2)}));
    }
}

TEST_CASE("Cech boundary complexes") {
    const auto path = plumbing::cech_boundary_complex(simple_graph(rc, {0, 0}, {{0, 1}}));
    CHECK(path.complex.term(1).size() == 1);
    CHECK(path.complex.term(0).size() == 4);
    const auto fork = plumbing::cech_boundary_complex(danielewski(2));
    CHECK(fork.complex.term(0).size() == 10);
    CHECK(fork.complex.term(1).size() == 4);
    const auto tri = plumbing::cech_boundary_complex(plumbing::graph_from_record(fixture("three_lines.json")));
    const auto h = motives::complex_homology(tri.complex);
    CHECK(h[0] == free1());
    CHECK(h[1] == free1());
    CHECK(h[2] == free1(1, 3));
}

TEST_CASE("homology at infinity: three lines") {
    const auto h = plumbing::homology_at_infinity(plumbing::graph_from_record(fixture("three_lines.json")));
    CHECK(h.H[0] == free1());
    CHECK(motives::pretty(h.H[1]) == "1 + (1/2)(1)");
    CHECK(h.H[1].split_assumed());
    CHECK(h.H[2] == free1(2));
    CHECK(h.H[3] == free1(2));
    REQUIRE(h.quadratic.has_value());
    CHECK(h.quadratic->diagonalization.diagonal.back() == GwElement::one(rc).times(2));
    CHECK(motives::smith_normal_form(h.incidence).divisors() == std::vector<Integer>{1, 1});
    CHECK(h.mumford_snf.divisors() == std::vector<Integer>{1, 1, 2});
}

TEST_CASE("homology at infinity: Danielewski surfaces") {
    for (std::size_t n = 1; n <= 8; ++n) {
        CAPTURE(n);
        const auto g = plumbing::graph_from_record(fixture("danielewski_" + std::to_string(n) + ".json"));
        const auto h = plumbing::homology_at_infinity(g);
        CHECK(h.H[0] == free1());
        CHECK(h.H[1] == ArtinTateMotive({TateSummand::torsion(2 * n, 1)}));
        CHECK(h.H[2].empty());
        CHECK(h.H[3] == free1(2));
        CHECK(h.warnings.empty());
        // |det mu| = 2n by cofactor expansion.
        CHECK(abs(oracle::det(h.mumford_rank)) == 2 * n);

        const auto& d = h.quadratic->diagonalization;
        CHECK(d.unit_count == 2 * n);
        REQUIRE(d.diagonal.size() == 2 * n + 1);
        CHECK(d.diagonal.back() == gw::hyperbolic(rc).times(n));
        CHECK(d.diagonal.back().signature() == 0);
        CHECK_FALSE(d.diagonal.back() == GwElement::one(rc).times(2 * n));
        std::vector<Integer> snf(2 * n, 1);
        snf.push_back(2 * n);
        CHECK(d.rank_snf == snf);
        CHECK(gw::replay(h.quadratic->mumford, d) == d.claimed(rc));
    }
}

TEST_CASE("homology at infinity: single vertex") {
    const auto h = plumbing::homology_at_infinity(simple_graph(rc, {0}, {}));
    CHECK(h.H[0] == free1());
    CHECK(h.H[1] == free1(1));
    CHECK(h.H[2] == free1(1));
    CHECK(h.H[3] == free1(2));
}

TEST_CASE("random graphs: consistency with graph oracles") {
    std::mt19937_64 rng(2718);
    for (int t = 0; t < 200; ++t) {
        const PlumbingGraph g = random_graph(rng, t % 2 ? rc : Field::finite(7));
        const auto mu = plumbing::mumford_matrix(g);
        CHECK(gw::rank_realization(mu) == plumbing::classical_mumford_matrix(g));
        CHECK(mu == mu.transposed());

        const IntMatrix n = plumbing::incidence_matrix(g);
        for (std::size_t r = 0; r < n.rows(); ++r) {
            Integer sum = 0;
            for (std::size_t c = 0; c < n.cols(); ++c) sum += n(r, c);
            CHECK(sum == 0);
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : g.edges()) {
            for (std::size_t k = 0; k < e.points.size(); ++k) edges.emplace_back(e.i, e.j);
        }
        const std::size_t comps = oracle::components(g.vertices().size(), edges);
        CHECK(motives::kernel_rank(n.transposed()) == edges.size() - g.vertices().size() + comps);
        for (const auto& d : motives::smith_normal_form(n).divisors()) CHECK(d == 1);

        const auto h = plumbing::homology_at_infinity(g);
        CHECK(h.H[0] == free1(0, comps));
        CHECK(h.H[3] == free1(2, comps));
        CHECK(h.mumford_snf.rank() == oracle::rank(h.mumford_rank));
        Integer chi = 0;
        for (std::size_t i = 0; i < 4; ++i) chi += (i % 2 == 0 ? 1 : -1) * h.H[i].free_rank();
        CHECK(chi == 0);
        if (h.quadratic) CHECK(gw::replay(h.quadratic->mumford, h.quadratic->diagonalization) ==
                               h.quadratic->diagonalization.claimed(g.field()));
    }
}

TEST_CASE("vertex order does not change H_i") {
    std::mt19937_64 rng(161803);
    std::vector<PlumbingGraph> graphs{plumbing::graph_from_record(fixture("three_lines.json"))};
    for (std::size_t n = 1; n <= 5; ++n) graphs.push_back(danielewski(n));
    for (int t = 0; t < 20; ++t) graphs.push_back(random_graph(rng, rc));
    for (const auto& g : graphs) {
        const auto base = plumbing::homology_at_infinity(g);
        std::vector<std::size_t> perm(g.vertices().size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (int k = 0; k < 5; ++k) {
            std::shuffle(perm.begin(), perm.end(), rng);
            const auto h = plumbing::homology_at_infinity(g.relabeled(perm));
            CHECK(h.H == base.H);
            const auto& d = h.quadratic->diagonalization;
            CHECK(d.rank_snf == base.quadratic->diagonalization.rank_snf);
            const auto snf = motives::smith_normal_form(gw::rank_realization(d.claimed(g.field())));
            for (std::size_t i = 0; i < d.rank_snf.size(); ++i) CHECK(snf.S(i, i) == d.rank_snf[i]);
        }
    }
}

TEST_CASE("graph records") {
    const auto g = plumbing::graph_from_record(fixture("danielewski_3.json"));
    CHECK(g.vertices().size() == 7);
    CHECK(g.vertices()[2].name == "F_0");
    const auto again = plumbing::graph_from_record(plumbing::to_record(g));
    CHECK(plumbing::to_record(again) == plumbing::to_record(g));

    const auto f7 = plumbing::graph_from_record(fixture("three_lines.json"), Field::finite(7));
    CHECK(f7.field() == Field::finite(7));

    nlohmann::json rec = fixture("three_lines.json");
    rec["edges"][0]["points"][0]["residue"] = {{"quadratic", "-1"}};
    CHECK_NOTHROW(plumbing::graph_from_record(rec));
    CHECK(code_of([&] { plumbing::graph_from_record(rec, Field::finite(7)); }) == ErrorCode::Parse);
    rec["edges"][0]["points"][0]["residue"] = {{"quadratic", "+1"}};
    CHECK(code_of([&] { plumbing::graph_from_record(rec); }) == ErrorCode::Parse);
}
