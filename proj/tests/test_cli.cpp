#include "doctest.h"

#include "motinf/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace motinf;

namespace {

std::string fixture_path(const std::string& name) { return std::string(MOTINF_FIXTURES) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json record(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("record");
    const Run r = run(args);
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

std::string temp_file(const std::string& name, const nlohmann::json& content) {
    const auto path = std::filesystem::temp_directory_path() / ("motinf_test_" + name + ".json");
    std::ofstream(path) << content.dump();
    return path.string();
}

nlohmann::json read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("sha256") {
    CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(cli::canonical_digest(nlohmann::json::parse(R"({"b":1, "a":[1, 2]})")) ==
          cli::canonical_digest(nlohmann::json::parse(R"({"a":[1,2],"b":1})")));
}

TEST_CASE("plumbing: Danielewski record") {
    const auto rec = record({"plumbing", fixture_path("danielewski_3.json")});
    CHECK(rec["tool_version"] == cli::tool_version);
    CHECK(rec["subcommand"] == "plumbing");
    CHECK(rec["input_digest"] == cli::canonical_digest(read_fixture("danielewski_3.json")));
    CHECK(rec["result"]["H_pretty"] == nlohmann::json::array({"1", "(1/6)(1)", "0", "1(2)"}));
    CHECK(rec["warnings"].empty());
}

TEST_CASE("plumbing: three lines warnings") {
    const auto rec = record({"plumbing", fixture_path("three_lines.json")});
    CHECK(rec["result"]["H_pretty"][1] == "1 + (1/2)(1)");
    CHECK(rec["result"]["H"][1]["split_assumed"] == true);
    bool split = false, ambiguity = false;
    for (const auto& w : rec["warnings"]) {
        const auto s = w.get<std::string>();
        split = split || s.rfind("split_assumed", 0) == 0;
        ambiguity = ambiguity || s.find("ambiguous") != std::string::npos;
    }
    CHECK(split);
    CHECK(ambiguity);

    const Run text = run({"plumbing", fixture_path("three_lines.json")});
    CHECK(text.code == 0);
    CHECK(text.out.rfind("motinf 0.1.0  plumbing  input sha256 ", 0) == 0);
    CHECK(text.out.find("warnings:") != std::string::npos);
}

TEST_CASE("exit codes") {
    Run r = run({"plumbing", fixture_path("self_edge.json")});
    CHECK(r.code == 2);
    CHECK(r.err.find("self-edge at edges[0]") != std::string::npos);

    r = run({"plumbing", fixture_path("odd_weight.json")});
    CHECK(r.code == 3);
    CHECK(record({"plumbing", fixture_path("odd_weight.json"), "--rank-only"})["result"]["mode"] == "rank_only");

    CHECK(run({"plumbing", "/nonexistent/graph.json"}).code == 2);
    CHECK(run({"arrangement", fixture_path("duplicate_hyperplane.json")}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"plumbing", fixture_path("three_lines.json"), "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    auto g = read_fixture("three_lines.json");
    g["edges"][0]["points"][0]["residue"] = {{"quadratic", "-1"}};
    CHECK(run({"plumbing", temp_file("artin_point", g)}).code == 3);
    g["edges"][0]["points"][0]["residue"] = {{"quadratic", "nonsq"}};
    g["field"] = "fq:7";
    const std::string nonsq = temp_file("nonsq", g);
    CHECK(run({"plumbing", nonsq, "--field", "rc"}).code == 2);
}

TEST_CASE("field override") {
    const auto rec = record({"plumbing", fixture_path("danielewski_2.json"), "--field", "fq:5"});
    CHECK(rec["result"]["field"] == nlohmann::json{{"kind", "fq"}, {"q", 5}});
    CHECK(rec["result"]["H_pretty"][1] == "(1/4)(1)");
    CHECK(run({"plumbing", fixture_path("danielewski_2.json"), "--field", "fq:6"}).code == 2);
}

TEST_CASE("arrangement") {
    const auto rec = record({"arrangement", fixture_path("affine_plane.json")});
    CHECK(rec["result"]["pretty"]["at_infinity"] == "1 + 1(2)[3]");
    const auto axes = record({"arrangement", fixture_path("coordinate_axes.json")});
    CHECK(axes["result"]["stratum_table"]["m_profile"] == nlohmann::json::array({1, 2, 1}));
    CHECK(axes["result"]["pretty"]["homotopy_type"] == "1 + 2*1(1)[1] + 1(2)[2]");
}

TEST_CASE("gw expressions") {
    auto rec = record({"gw", "n_eps(2)", "--field", "rc"});
    CHECK(rec["result"]["value"]["rank"] == 2);
    CHECK(rec["result"]["value"]["sig"] == 0);
    rec = record({"gw", "H*<-1>", "--field", "rc"});
    CHECK(rec["result"]["pretty"] == record({"gw", "H"})["result"]["pretty"]);
    CHECK(record({"gw", "<-1>*<-1>"})["result"]["is_unit"] == true);
    CHECK(record({"gw", "2<u> - 2<1>", "--field", "fq:3"})["result"]["value"]["rank"] == 0);

    const Run bad = run({"gw", "<1> + <1", "--field", "rc"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("position") != std::string::npos);
    CHECK(run({"gw", "<u>", "--field", "qc"}).code == 2);

    const auto m = record({"gw", "--matrix", fixture_path("three_lines_matrix.json")});
    CHECK(m["result"]["replay_ok"] == true);
    CHECK(m["result"]["diagonalization"]["unit_count"] == 2);
}

TEST_CASE("cech") {
    const auto tri = record({"cech", fixture_path("triangle_cech.json")});
    CHECK(tri["result"]["homology_pretty"] == nlohmann::json::array({"1", "1", "3*1(1)"}));
    const auto single = record({"cech", fixture_path("single_stratum.json")});
    CHECK(single["result"]["complex"]["differentials"].empty());

    nlohmann::json bad{{"order", {0, 1, 2}},
                       {"strata", nlohmann::json::array()},
                       {"faces", {{{"from", {0, 1, 2}}, {"to", {0, 1}}, {"matrix", {{2}}}}}}};
    for (auto j : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
        bad["strata"].push_back({{"J", j}, {"kind", "point"}});
    }
    const Run r = run({"cech", temp_file("bad_faces", bad)});
    CHECK(r.code == 2);
    CHECK(r.err.find("(n, k) = (2, 2)") != std::string::npos);
}

TEST_CASE("determinism") {
    for (const auto& name : {"three_lines.json", "danielewski_5.json", "triangle_cech.json"}) {
        const std::string sub = std::string(name).find("cech") != std::string::npos ? "cech" : "plumbing";
        const Run a = run({sub, fixture_path(name), "--format", "record"});
        const Run b = run({sub, fixture_path(name), "--format", "record"});
        CHECK(a.out == b.out);
        const Run c = run({sub, fixture_path(name)});
        const Run d = run({sub, fixture_path(name)});
        CHECK(c.out == d.out);
    }
    const auto p = record({"plumbing", fixture_path("danielewski_4.json"), "--seed", "17"});
    CHECK(p["result"]["permutation_check"]["identical"] == true);
    CHECK(p["result"]["permutation_check"]["seed"] == 17);
}
