#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

#include "motinf/cech.hpp"
#include "motinf/error.hpp"

#include <fstream>

using namespace motinf;
using motives::ArtinTateMotive;
using motives::Stratum;
using motives::Subset;
using motives::TateSummand;

namespace {

ErrorCode code_of(const std::function<void()>& f, std::string* message = nullptr) {
    try {
        f();
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

std::map<Subset, Stratum> triangle() {
    return {{{0}, Stratum::p1()},      {{1}, Stratum::p1()},      {{2}, Stratum::p1()},
            {{0, 1}, Stratum::points()}, {{0, 2}, Stratum::points()}, {{1, 2}, Stratum::points()}};
}

}  // namespace

TEST_CASE("single stratum") {
    const auto c = motives::ordered_cech_complex({0}, {{{0}, Stratum::p1()}});
    REQUIRE(c.complex.length() == 1);
    const auto h = motives::complex_homology(c.complex);
    CHECK(h[0] == ArtinTateMotive::unit());
    CHECK(h[2] == ArtinTateMotive({TateSummand::free(1, 1)}));
}

TEST_CASE("two P1s meeting in a rational point") {
    const auto c = motives::ordered_cech_complex({0, 1}, {{{0}, Stratum::p1()}, {{1}, Stratum::p1()}, {{0, 1}, Stratum::points()}});
    REQUIRE(c.complex.length() == 2);
    const IntMatrix& d = c.complex.differential(1);
    REQUIRE(d.rows() == 4);
    REQUIRE(d.cols() == 1);
    // Alternating sum of the two face maps: opposite signs on the two unit summands.
    CHECK(d(1, 0) == 0);
    CHECK(d(3, 0) == 0);
    CHECK(d(0, 0) == -d(2, 0));
    CHECK((d(0, 0) == 1 || d(0, 0) == -1));
    const auto h = motives::complex_homology(c.complex);
    CHECK(h[0] == ArtinTateMotive::unit());
    CHECK(h[1].empty());
    CHECK(h[2] == ArtinTateMotive({TateSummand::free(2, 1)}));
}

TEST_CASE("triangle of P1s") {
    const auto c = motives::ordered_cech_complex({0, 1, 2}, triangle());
    const auto h = motives::complex_homology(c.complex);
    REQUIRE(h.size() == 3);
    CHECK(h[0] == ArtinTateMotive::unit());
    CHECK(h[1] == ArtinTateMotive::unit());
    CHECK(h[2] == ArtinTateMotive({TateSummand::free(3, 1)}));
    CHECK(c.term_subsets[1] == std::vector<Subset>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("face data for Artin strata") {
    std::map<Subset, Stratum> s{{{0}, Stratum::artin(1, "K")}, {{1}, Stratum::artin(1, "K")}, {{0, 1}, Stratum::artin(1, "K")}};
    CHECK(code_of([&] { motives::ordered_cech_complex({0, 1}, s); }) == ErrorCode::MissingFaceData);

    const std::vector<motives::FaceOverride> faces{{{0, 1}, {0}, IntMatrix{{1}}}, {{0, 1}, {1}, IntMatrix{{0}}}};
    const auto c = motives::ordered_cech_complex({0, 1}, s, faces);
    const auto h = motives::complex_homology(c.complex);
    CHECK(h[0] == ArtinTateMotive({TateSummand::artin(1, "K")}));
    CHECK(h[1].empty());

    const std::vector<motives::FaceOverride> both{{{0, 1}, {0}, IntMatrix{{1}}}, {{0, 1}, {1}, IntMatrix{{1}}}};
    const auto c2 = motives::ordered_cech_complex({0, 1}, s, both);
    CHECK(code_of([&] { motives::complex_homology(c2.complex); }) == ErrorCode::NonPermutationArtinDifferential);

    const std::vector<motives::FaceOverride> wrong_shape{{{0, 1}, {0}, IntMatrix{{1, 1}}}};
    CHECK(code_of([&] { motives::ordered_cech_complex({0, 1}, s, wrong_shape); }) == ErrorCode::InconsistentFaceData);

    // Disjoint Artin strata need no face data.
    const auto disjoint = motives::ordered_cech_complex({0, 1}, {{{0}, Stratum::artin(1, "K")}, {{1}, Stratum::artin(2, "K")}});
    CHECK(motives::complex_homology(disjoint.complex)[0] == ArtinTateMotive({TateSummand::artin(3, "K")}));
}

TEST_CASE("inconsistent face matrices name (n, k)") {
    std::map<Subset, Stratum> s;
    for (Subset j : std::vector<Subset>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) s[j] = Stratum::points();
    const std::vector<motives::FaceOverride> faces{{{0, 1, 2}, {0, 1}, IntMatrix{{2}}}};
    std::string message;
    CHECK(code_of([&] { motives::ordered_cech_complex({0, 1, 2}, s, faces); }, &message) == ErrorCode::InconsistentFaceData);
    CHECK(message.find("(n, k) = (2, 2)") != std::string::npos);
    // The same data without the override is a valid complex.
    CHECK_NOTHROW(motives::ordered_cech_complex({0, 1, 2}, s));
}

TEST_CASE("invalid configurations") {
    CHECK(code_of([] {
              motives::ordered_cech_complex({0, 1}, {{{0}, Stratum::points(2)}, {{1}, Stratum::points(2)}, {{0, 1}, Stratum::points(2)}});
          }) == ErrorCode::MissingFaceData);
    CHECK(code_of([] {
              motives::ordered_cech_complex({0, 1}, {{{0}, Stratum::points()}, {{1}, Stratum::p1()}, {{0, 1}, Stratum::p1()}});
          }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { motives::ordered_cech_complex({0, 1}, {{{0}, Stratum::p1()}, {{0, 1}, Stratum::points()}}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([] { motives::ordered_cech_complex({0}, {{{0, 3}, Stratum::points()}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random crossing configurations") {
    std::mt19937_64 rng(424242);
    for (int t = 0; t < 400; ++t) {
        const gen::CechConfig cfg = gen::random_cech_config(rng);
        std::vector<int> order(static_cast<std::size_t>(cfg.elements));
        std::iota(order.begin(), order.end(), 0);
        const auto c = motives::ordered_cech_complex(order, cfg.strata);
        for (std::size_t n = 2; n < c.complex.length(); ++n) {
            CHECK((c.complex.differential(n - 1) * c.complex.differential(n)).is_zero());
        }
        std::map<std::int64_t, long long> chi_terms, chi_h;
        for (const auto& b : motives::block_homology(c.complex)) {
            const int sign = b.term % 2 == 0 ? 1 : -1;
            chi_terms[b.twist] += sign * static_cast<long long>(b.dimension);
            chi_h[b.twist] += sign * static_cast<long long>(b.free_rank);
        }
        CHECK(chi_terms == chi_h);

        const auto h = motives::complex_homology(c.complex);
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(motives::complex_homology(motives::ordered_cech_complex(order, cfg.strata).complex) == h);

        // Curves only meeting pairwise: a graph with one edge per point.
        std::size_t p1 = 0;
        bool graph = true;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& [j, s] : cfg.strata) {
            if (j.size() == 1) p1 += s.kind == Stratum::Kind::P1;
            if (j.size() == 1 && s.kind != Stratum::Kind::P1) graph = false;
            if (j.size() > 2) graph = false;
            if (j.size() == 2) {
                for (int k = 0; k < s.count; ++k) edges.emplace_back(j[0], j[1]);
            }
        }
        if (p1 > 0) {
            REQUIRE(h.size() >= 3);
            CHECK(h[2] == ArtinTateMotive({TateSummand::free(p1, 1)}));
        }
        if (graph) {
            const std::size_t comps = oracle::components(static_cast<std::size_t>(cfg.elements), edges);
            CHECK(h[0] == ArtinTateMotive({TateSummand::free(comps)}));
            CHECK(h[1] == ArtinTateMotive({TateSummand::free(edges.size() - (cfg.elements - comps))}));
        }
    }
}

TEST_CASE("records") {
    std::ifstream in(std::string(MOTINF_FIXTURES) + "/triangle_cech.json");
    const auto rec = nlohmann::json::parse(in);
    const auto input = motives::cech_input_from_record(rec);
    CHECK(input.strata == triangle());
    const auto again = motives::cech_input_from_record(motives::to_record(input));
    CHECK(again.strata == input.strata);
    CHECK(again.order == input.order);
    CHECK(code_of([] { motives::cech_input_from_record(nlohmann::json::parse(R"({"strata":[{"J":[0],"kind":"disk"}]})")); }) ==
          ErrorCode::Parse);
}
