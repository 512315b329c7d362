#include "motinf/arrangement.hpp"
#include "motinf/cech.hpp"
#include "motinf/cli.hpp"
#include "motinf/error.hpp"
#include "motinf/gw_records.hpp"
#include "motinf/plumbing.hpp"

#include "../json_util.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace motinf::cli {

namespace {

struct Options {
    std::string format = "text";
    std::string field;
    bool rank_only = false;
    std::optional<std::uint64_t> seed;
};

struct Outcome {
    RunReport report;
    std::string text;
};

nlohmann::json read_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open input file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, "'" + path + "' is not valid JSON: " + e.what());
    }
}

std::optional<gw::Field> field_flag(const Options& opt) {
    if (opt.field.empty()) return std::nullopt;
    return gw::Field::parse(opt.field);
}

std::string table(const std::vector<std::vector<std::string>>& rows, const std::string& indent = "  ") {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line = indent;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += line + "\n";
    }
    return out;
}

std::string indented(const std::string& block, const std::string& indent = "  ") {
    std::string out;
    std::istringstream in(block);
    for (std::string line; std::getline(in, line);) out += indent + line + "\n";
    return out;
}

std::string gw_matrix_text(const gw::GwMatrix& m) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(std::move(row));
    }
    return table(rows);
}

std::string matrix_text(const IntMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return "  (" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")\n";
    return indented(m.to_string());
}

nlohmann::json matrix_record(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Integer& x = m(r, c);
            if (fits_int64(x)) {
                row.push_back(static_cast<std::int64_t>(x));
            } else {
                row.push_back(x.str());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json integers_record(const std::vector<Integer>& xs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : xs) out.push_back(detail::integer_to_json(x));
    return out;
}

std::string join(const std::vector<Integer>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x.str();
    return "(" + out + ")";
}

void ambiguity_warnings(const gw::DiagonalizationResult& d, const gw::Field& field, std::vector<std::string>& warnings) {
    for (std::size_t i = d.unit_count; i < d.diagonal.size(); ++i) {
        const gw::GwElement& x = d.diagonal[i];
        if (x.is_zero() || x.rank() % 2 != 0) continue;
        if (x == gw::GwElement::one(field).times(x.rank())) {
            warnings.push_back("notation ambiguous: diagonal entry " + std::to_string(i) + " is " + x.to_string() +
                               "; a bare integer " + x.rank().str() + " may denote " + x.to_string() + " or " +
                               gw::hyperbolic(field).times(x.rank() / 2).to_string());
        }
    }
}

std::string diagonalization_text(const gw::DiagonalizationResult& d) {
    std::string diag;
    for (const auto& x : d.diagonal) diag += (diag.empty() ? "" : ", ") + x.to_string();
    std::string out = "  diagonal: (" + diag + ")\n";
    out += "  unit entries: " + std::to_string(d.unit_count) + "\n";
    out += "  certificate: " + std::to_string(d.left_ops.size()) + " row ops, " + std::to_string(d.right_ops.size()) +
           " column ops\n";
    if (d.residual_block) {
        out += "  residual block:\n" + indented(gw_matrix_text(*d.residual_block));
    } else {
        out += "  residual block: none\n";
    }
    out += "  rank SNF: " + join(d.rank_snf) + "\n";
    if (d.signature_snf) out += "  signature SNF: " + join(*d.signature_snf) + "\n";
    return out;
}

nlohmann::json motives_record(const std::vector<motives::ArtinTateMotive>& ms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& m : ms) out.push_back(motives::to_record(m));
    return out;
}

nlohmann::json motives_pretty(const std::vector<motives::ArtinTateMotive>& ms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& m : ms) out.push_back(motives::pretty(m));
    return out;
}

std::string motive_table(const std::string& name, const std::vector<motives::ArtinTateMotive>& ms) {
    std::vector<std::vector<std::string>> rows{{"i", name, "split_assumed"}};
    for (std::size_t i = 0; i < ms.size(); ++i) {
        rows.push_back({std::to_string(i), motives::pretty(ms[i]), ms[i].split_assumed() ? "yes" : "no"});
    }
    return table(rows);
}

// ---------------------------------------------------------------------------

Outcome cmd_plumbing(const std::string& path, const Options& opt) {
    const nlohmann::json input = read_record(path);
    const plumbing::PlumbingGraph g = plumbing::graph_from_record(input, field_flag(opt));
    const bool quadratic = !opt.rank_only;
    if (quadratic && !g.all_weights_even()) plumbing::mumford_matrix(g);
    const plumbing::InfinityHomology h = plumbing::homology_at_infinity(g, quadratic);

    Outcome o;
    o.report.subcommand = "plumbing";
    o.report.input_digest = canonical_digest(input);
    o.report.warnings = h.warnings;

    std::vector<motives::ArtinTateMotive> H(h.H.begin(), h.H.end());
    nlohmann::json names = nlohmann::json::array();
    for (const auto& v : g.vertices()) names.push_back(v.name);
    nlohmann::json& r = o.report.result;
    r["field"] = gw::to_record(g.field());
    r["mode"] = quadratic ? "quadratic" : "rank_only";
    r["vertices"] = names;
    r["incidence"] = matrix_record(h.incidence);
    r["incidence_snf"] = integers_record(h.incidence_snf.divisors());
    r["mumford_rank"] = matrix_record(h.mumford_rank);
    r["mumford_rank_snf"] = integers_record(h.mumford_snf.divisors());
    r["mumford"] = nullptr;
    r["diagonalization"] = nullptr;
    if (h.quadratic) {
        r["mumford"] = gw::to_record(h.quadratic->mumford);
        r["diagonalization"] = gw::to_record(h.quadratic->diagonalization);
        ambiguity_warnings(h.quadratic->diagonalization, g.field(), o.report.warnings);
    }
    r["boundary_homology"] = motives_record(h.boundary_homology);
    r["H"] = motives_record(H);
    r["H_pretty"] = motives_pretty(H);

    std::string& t = o.text;
    t += "field: " + g.field().to_string() + "\n";
    t += "vertices: " + std::to_string(g.vertices().size()) + ", intersection points: " +
         std::to_string(g.point_count()) + "\n\n";
    t += "incidence N (points x vertices):\n" + matrix_text(h.incidence);
    t += "  SNF: " + join(h.incidence_snf.divisors()) + "\n\n";
    t += "Mumford matrix, rank realization:\n" + matrix_text(h.mumford_rank);
    t += "  SNF: " + join(h.mumford_snf.divisors()) + "\n\n";
    if (h.quadratic) {
        t += "quadratic Mumford matrix over " + g.field().to_string() + ":\n" + gw_matrix_text(h.quadratic->mumford);
        t += "\ndiagonalization (equivalence):\n" + diagonalization_text(h.quadratic->diagonalization) + "\n";
    }
    t += "boundary complex homology:\n" + motive_table("H_i(D)", h.boundary_homology) + "\n";
    t += "homology at infinity:\n" + motive_table("H_i", H);

    if (opt.seed) {
        std::vector<std::size_t> perm(g.vertices().size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::mt19937_64 rng(*opt.seed);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto permuted = plumbing::homology_at_infinity(g.relabeled(perm), quadratic);
        const bool identical = permuted.H == h.H;
        r["permutation_check"] = {{"seed", *opt.seed}, {"permutation", perm}, {"identical", identical}};
        t += "\npermutation check (seed " + std::to_string(*opt.seed) + "): " + (identical ? "identical" : "MISMATCH") +
             "\n";
        if (!identical) o.report.warnings.push_back("permutation_check: relabeled graph gave different H_i");
    }
    return o;
}

Outcome cmd_arrangement(const std::string& path, const Options& opt) {
    const nlohmann::json input = read_record(path);
    const arrangement::Arrangement a = arrangement::arrangement_from_record(input);
    const arrangement::StratumTable st = arrangement::stratum_table(a);
    const auto pi = arrangement::homotopy_type(st);
    const auto pic = arrangement::compact_support_type(st);
    const auto pinf = arrangement::homotopy_type_at_infinity(st);

    Outcome o;
    o.report.subcommand = "arrangement";
    o.report.input_digest = canonical_digest(input);
    if (!opt.field.empty()) {
        field_flag(opt);
        o.report.warnings.push_back("field flag ignored: arrangement data is field independent");
    }
    if (st.nc_flag && (arrangement::homotopy_type_nc(st) != pi || arrangement::compact_support_type_nc(st) != pic)) {
        o.report.warnings.push_back("closed form m(n) disagrees with the subset sum");
    }

    nlohmann::json& r = o.report.result;
    r["arrangement"] = arrangement::to_record(a);
    r["stratum_table"] = arrangement::to_record(st);
    r["homotopy_type"] = motives::to_record(pi);
    r["compact_support_type"] = motives::to_record(pic);
    r["at_infinity"] = motives::to_record(pinf);
    r["pretty"] = {{"homotopy_type", motives::pretty(pi)},
                   {"compact_support_type", motives::pretty(pic)},
                   {"at_infinity", motives::pretty(pinf)}};

    std::vector<std::vector<std::string>> rows{{"J", "n_J", "c_J"}};
    for (const auto& row : st.rows) {
        std::string j;
        for (auto x : row.subset) j += (j.empty() ? "" : ",") + std::to_string(x);
        rows.push_back({"{" + j + "}", std::to_string(row.n), std::to_string(row.c)});
    }
    std::string& t = o.text;
    t += "dimension: " + std::to_string(a.dim()) + ", hyperplanes: " + std::to_string(a.hyperplanes().size()) + "\n\n";
    t += "stratum table (nonempty intersections):\n" + table(rows);
    t += "  normal crossing: " + std::string(st.nc_flag ? "yes" : "no") + "\n";
    if (st.m_profile) {
        std::string m;
        for (auto x : *st.m_profile) m += (m.empty() ? "" : ", ") + std::to_string(x);
        t += "  m(n): [" + m + "]\n";
    }
    t += "\n" + table({{"homotopy type", motives::pretty(pi)},
                       {"compact support", motives::pretty(pic)},
                       {"at infinity", motives::pretty(pinf)}},
                      "");
    return o;
}

gw::GwElement matrix_entry(const nlohmann::json& j, const gw::Field& field, const std::string& path) {
    try {
        if (j.is_string()) return parse_gw_expression(j.get<std::string>(), field);
        if (j.is_number_integer()) return gw::GwElement::one(field).times(j.get<std::int64_t>());
        return gw::gw_from_record(j, field);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

Outcome cmd_gw(const std::string& expression, const std::string& matrix_path, const Options& opt) {
    Outcome o;
    o.report.subcommand = "gw";
    nlohmann::json& r = o.report.result;
    std::string& t = o.text;

    if (!matrix_path.empty()) {
        const nlohmann::json input = read_record(matrix_path);
        o.report.input_digest = canonical_digest(input);
        std::optional<gw::Field> field = field_flag(opt);
        if (!field) {
            const auto it = input.find("field");
            field = it != input.end() ? gw::field_from_record(*it) : gw::Field::real_closed();
        }
        const auto& entries = detail::require(input, "entries", "matrix");
        if (!entries.is_array()) throw Error(ErrorCode::Parse, "matrix.entries: expected an array of rows");
        const std::size_t rows = entries.size();
        const std::size_t cols = rows == 0 ? 0 : entries[0].size();
        gw::GwMatrix m(*field, rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const std::string rpath = "entries[" + std::to_string(i) + "]";
            if (!entries[i].is_array() || entries[i].size() != cols) {
                throw Error(ErrorCode::Parse, rpath + ": expected " + std::to_string(cols) + " entries");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                m(i, c) = matrix_entry(entries[i][c], *field, rpath + "[" + std::to_string(c) + "]");
            }
        }
        const gw::DiagonalizationResult d = gw::gw_diagonalize(m);
        const bool replay_ok = gw::replay(m, d) == d.claimed(*field);
        if (d.residual_block) {
            o.report.warnings.push_back("residual_block: GW diagonalization left a " +
                                        std::to_string(d.residual_block->rows()) + "x" +
                                        std::to_string(d.residual_block->cols()) + " block without unit entries");
        }
        if (!replay_ok) o.report.warnings.push_back("certificate replay does not reproduce the claimed matrix");
        ambiguity_warnings(d, *field, o.report.warnings);
        r["matrix"] = gw::to_record(m);
        r["diagonalization"] = gw::to_record(d);
        r["rank_realization"] = matrix_record(gw::rank_realization(m));
        if (field->kind() == gw::Field::Kind::RealClosed) {
            r["signature_realization"] = matrix_record(gw::signature_realization(m));
        }
        r["replay_ok"] = replay_ok;

        t += "field: " + field->to_string() + "\n\nmatrix:\n" + gw_matrix_text(m);
        t += "\ndiagonalization (equivalence):\n" + diagonalization_text(d);
        t += "  replay: " + std::string(replay_ok ? "ok" : "FAILED") + "\n";
        return o;
    }

    const gw::Field field = field_flag(opt).value_or(gw::Field::real_closed());
    o.report.input_digest = canonical_digest({{"expression", expression}, {"field", gw::to_record(field)}});
    const gw::GwElement x = parse_gw_expression(expression, field);
    r["expression"] = expression;
    r["value"] = gw::to_record(x);
    r["pretty"] = x.to_string();
    r["is_unit"] = x.is_unit();

    std::vector<std::vector<std::string>> rows{{"value", x.to_string()}, {"rank", x.rank().str()}};
    if (field.kind() == gw::Field::Kind::RealClosed) rows.push_back({"signature", x.signature().str()});
    if (field.kind() == gw::Field::Kind::Finite) rows.push_back({"disc bit", std::to_string(x.disc_bit())});
    rows.push_back({"unit", x.is_unit() ? "yes" : "no"});
    t += "field: " + field.to_string() + "\n" + table(rows, "");
    return o;
}

Outcome cmd_cech(const std::string& path, const Options& opt) {
    const nlohmann::json input = read_record(path);
    Outcome o;
    o.report.subcommand = "cech";
    o.report.input_digest = canonical_digest(input);
    if (!opt.field.empty()) {
        field_flag(opt);
        o.report.warnings.push_back("field flag ignored: Cech homology is computed in the rank realization");
    }

    motives::TateComplex complex;
    nlohmann::json subsets = nullptr;
    if (input.contains("terms")) {
        complex = motives::complex_from_record(input);
    } else {
        const motives::CechInput ci = motives::cech_input_from_record(input);
        motives::CechComplex cc = motives::ordered_cech_complex(ci.order, ci.strata, ci.faces);
        subsets = cc.term_subsets;
        complex = std::move(cc.complex);
    }
    const auto blocks = motives::block_homology(complex);
    const auto homology = motives::complex_homology(complex);

    nlohmann::json& r = o.report.result;
    r["complex"] = motives::to_record(complex);
    r["term_subsets"] = subsets;
    nlohmann::json bj = nlohmann::json::array();
    std::vector<std::vector<std::string>> rows{{"term", "twist", "dim", "free", "torsion"}};
    for (const auto& b : blocks) {
        bj.push_back({{"term", b.term},
                      {"q", b.twist},
                      {"dimension", b.dimension},
                      {"free_rank", b.free_rank},
                      {"torsion", integers_record(b.torsion)}});
        rows.push_back({std::to_string(b.term), std::to_string(b.twist), std::to_string(b.dimension),
                        std::to_string(b.free_rank), b.torsion.empty() ? "-" : join(b.torsion)});
    }
    r["blocks"] = bj;
    r["homology"] = motives_record(homology);
    r["homology_pretty"] = motives_pretty(homology);

    std::string& t = o.text;
    for (std::size_t n = 0; n < complex.length(); ++n) {
        std::map<std::int64_t, std::size_t> by_twist;
        std::size_t labeled = 0;
        for (const auto& g : complex.term(n)) {
            if (g.label.empty()) {
                ++by_twist[g.twist];
            } else {
                ++labeled;
            }
        }
        std::string desc;
        for (const auto& [q, k] : by_twist) desc += (desc.empty() ? "" : " + ") + std::to_string(k) + "*1(" + std::to_string(q) + ")";
        if (labeled) desc += (desc.empty() ? "" : " + ") + std::to_string(labeled) + " Artin";
        t += "C_" + std::to_string(n) + ": " + (desc.empty() ? "0" : desc) + "\n";
        if (n > 0) t += "d_" + std::to_string(n) + ":\n" + matrix_text(complex.differential(n));
    }
    t += "\nhomology per (term, twist) block:\n" + table(rows);
    t += "\nhomology by total degree n + 2q:\n" + motive_table("H_n", homology);
    return o;
}

void emit(const Outcome& o, const Options& opt, std::ostream& out) {
    RunReport report = o.report;
    report.tool_version = tool_version;
    if (opt.format == "record") {
        out << to_record(report).dump(2) << "\n";
        return;
    }
    out << report.tool_version << "  " << report.subcommand << "  input sha256 " << report.input_digest << "\n\n";
    out << o.text;
    out << "\nwarnings:";
    if (report.warnings.empty()) out << " none";
    out << "\n";
    for (const auto& w : report.warnings) out << "  - " << w << "\n";
}

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "record"}));
    sub->add_option("--field", opt.field, "Base field: qc, rc or fq:<q>");
    sub->add_flag("--rank-only", opt.rank_only, "Classical Mumford mode (no GW refinement)");
    sub->add_option("--seed", opt.seed, "Seed for the permutation self-check");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quadratic Mumford matrices, motives at infinity, arrangements and Cech complexes", "motinf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    Options opt;
    std::string input;
    std::string expression;
    std::string matrix;

    auto* plumbing = app.add_subcommand("plumbing", "Homology at infinity of a plumbing graph record");
    plumbing->add_option("input", input, "Graph record (JSON)")->required();
    add_common(plumbing, opt);

    auto* arrangement = app.add_subcommand("arrangement", "Motives of a hyperplane arrangement complement");
    arrangement->add_option("input", input, "Arrangement record (JSON)")->required();
    add_common(arrangement, opt);

    auto* gw = app.add_subcommand("gw", "Evaluate a GW expression or diagonalize a GW matrix");
    gw->add_option("expression", expression, "Expression such as \"2<1> + H*<-1>\"");
    gw->add_option("--matrix", matrix, "Matrix record (JSON) to diagonalize");
    add_common(gw, opt);

    auto* cech = app.add_subcommand("cech", "Homology of an ordered Cech complex or an explicit complex");
    cech->add_option("input", input, "Strata or complex record (JSON)")->required();
    add_common(cech, opt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : ValidationFailure;
    }

    try {
        Outcome o;
        if (plumbing->parsed()) {
            o = cmd_plumbing(input, opt);
        } else if (arrangement->parsed()) {
            o = cmd_arrangement(input, opt);
        } else if (gw->parsed()) {
            if (expression.empty() == matrix.empty()) {
                throw Error(ErrorCode::InvalidArgument, "gw: give either an expression or --matrix <file>");
            }
            o = cmd_gw(expression, matrix, opt);
        } else {
            o = cmd_cech(input, opt);
        }
        if (opt.rank_only && !plumbing->parsed()) {
            o.report.warnings.push_back("rank-only flag ignored outside plumbing");
        }
        if (opt.seed && !plumbing->parsed()) {
            o.report.result["seed"] = *opt.seed;
        }
        emit(o, opt, out);
        return Success;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return e.unsupported_feature() ? UnsupportedFeature : ValidationFailure;
    } catch (const nlohmann::json::exception& e) {
        err << "error [parse]: " << e.what() << "\n";
        return ValidationFailure;
    }
}

}  // namespace motinf::cli
