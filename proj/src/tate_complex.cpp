#include "motinf/tate_complex.hpp"

#include "json_util.hpp"
#include "motinf/smith.hpp"

#include <map>
#include <set>

namespace motinf::motives {

TateComplex::TateComplex(std::vector<std::vector<Generator>> terms, std::vector<IntMatrix> differentials)
    : terms_(std::move(terms)), differentials_(std::move(differentials)) {
    const std::size_t expected = terms_.empty() ? 0 : terms_.size() - 1;
    if (differentials_.size() != expected) {
        throw Error(ErrorCode::InvalidArgument, "complex with " + std::to_string(terms_.size()) + " terms needs " +
                                                    std::to_string(expected) + " differentials, got " +
                                                    std::to_string(differentials_.size()));
    }
    for (std::size_t n = 1; n < terms_.size(); ++n) {
        const IntMatrix& d = differentials_[n - 1];
        const auto& target = terms_[n - 1];
        const auto& source = terms_[n];
        if (d.rows() != target.size() || d.cols() != source.size()) {
            throw Error(ErrorCode::InvalidArgument, "d_" + std::to_string(n) + " has shape " + std::to_string(d.rows()) +
                                                        "x" + std::to_string(d.cols()) + ", expected " +
                                                        std::to_string(target.size()) + "x" +
                                                        std::to_string(source.size()));
        }
        for (std::size_t r = 0; r < d.rows(); ++r) {
            for (std::size_t c = 0; c < d.cols(); ++c) {
                if (d(r, c) != 0 && target[r].twist != source[c].twist) {
                    throw Error(ErrorCode::InvalidArgument, "d_" + std::to_string(n) + " entry (" + std::to_string(r) +
                                                                "," + std::to_string(c) + ") joins twists " +
                                                                std::to_string(source[c].twist) + " and " +
                                                                std::to_string(target[r].twist));
                }
            }
        }
    }
    for (std::size_t n = 2; n < terms_.size(); ++n) {
        if (!(differentials_[n - 2] * differentials_[n - 1]).is_zero()) {
            throw Error(ErrorCode::InvalidArgument,
                        "d_" + std::to_string(n - 1) + " o d_" + std::to_string(n) + " != 0 at degree " + std::to_string(n));
        }
    }
    for (std::size_t n = 0; n < terms_.size(); ++n) {
        for (const auto& g : terms_[n]) {
            if (static_cast<std::int64_t>(n) + 2 * g.twist < 0) {
                throw Error(ErrorCode::InvalidArgument, "generator of twist " + std::to_string(g.twist) + " in term " +
                                                            std::to_string(n) + " has negative total degree");
            }
        }
    }
}

namespace {

// Rows and columns of d_n touching labeled generators must form a signed
// partial permutation inside one label. Returns the labeled generators of
// each term that meet a nonzero entry.
std::vector<std::set<std::size_t>> check_artin_blocks(const TateComplex& c) {
    std::vector<std::set<std::size_t>> touched(c.length());
    for (std::size_t n = 1; n < c.length(); ++n) {
        const IntMatrix& d = c.differential(n);
        const auto& target = c.term(n - 1);
        const auto& source = c.term(n);
        std::vector<int> row_hits(d.rows(), 0);
        std::vector<int> col_hits(d.cols(), 0);
        for (std::size_t r = 0; r < d.rows(); ++r) {
            for (std::size_t col = 0; col < d.cols(); ++col) {
                if (d(r, col) == 0) continue;
                const bool labeled = !target[r].label.empty() || !source[col].label.empty();
                if (!labeled) continue;
                const std::string where = "d_" + std::to_string(n) + " entry (" + std::to_string(r) + "," +
                                          std::to_string(col) + ")";
                if (target[r].label != source[col].label) {
                    throw Error(ErrorCode::NonPermutationArtinDifferential,
                                where + " maps Artin piece '" + source[col].label + "' to '" + target[r].label + "'");
                }
                if (d(r, col) != 1 && d(r, col) != -1) {
                    throw Error(ErrorCode::NonPermutationArtinDifferential,
                                where + " on Artin piece '" + target[r].label + "' is not +-1");
                }
                if (++row_hits[r] > 1 || ++col_hits[col] > 1) {
                    throw Error(ErrorCode::NonPermutationArtinDifferential,
                                where + " makes the differential on Artin piece '" + target[r].label +
                                    "' a non-permutation");
                }
                touched[n - 1].insert(r);
                touched[n].insert(col);
            }
        }
    }
    return touched;
}

// Restriction of d_n to unlabeled generators of twist q.
IntMatrix tate_block(const TateComplex& c, std::size_t n, std::int64_t q) {
    const auto& target = c.term(n - 1);
    const auto& source = c.term(n);
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t r = 0; r < target.size(); ++r) {
        if (target[r].label.empty() && target[r].twist == q) rows.push_back(r);
    }
    for (std::size_t col = 0; col < source.size(); ++col) {
        if (source[col].label.empty() && source[col].twist == q) cols.push_back(col);
    }
    const IntMatrix& d = c.differential(n);
    IntMatrix b(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = d(rows[i], cols[j]);
    }
    return b;
}

}  // namespace

std::vector<BlockHomology> block_homology(const TateComplex& c) {
    check_artin_blocks(c);
    std::set<std::int64_t> twists;
    for (const auto& term : c.terms()) {
        for (const auto& g : term) {
            if (g.label.empty()) twists.insert(g.twist);
        }
    }
    std::vector<BlockHomology> out;
    for (std::int64_t q : twists) {
        // rank and invariant factors of each d_n on this block; d_0 and d_len are zero.
        std::vector<std::size_t> rank(c.length() + 1, 0);
        std::vector<std::vector<Integer>> factors(c.length() + 1);
        for (std::size_t n = 1; n < c.length(); ++n) {
            auto snf = smith_normal_form(tate_block(c, n, q));
            factors[n] = snf.divisors();
            rank[n] = factors[n].size();
        }
        for (std::size_t n = 0; n < c.length(); ++n) {
            BlockHomology h;
            h.term = n;
            h.twist = q;
            for (const auto& g : c.term(n)) {
                if (g.label.empty() && g.twist == q) ++h.dimension;
            }
            if (h.dimension == 0) continue;
            h.free_rank = h.dimension - rank[n] - rank[n + 1];
            for (const auto& f : factors[n + 1]) {
                if (f > 1) h.torsion.push_back(f);
            }
            out.push_back(std::move(h));
        }
    }
    return out;
}

std::vector<ArtinTateMotive> complex_homology(const TateComplex& c) {
    const auto touched = check_artin_blocks(c);
    std::map<std::int64_t, std::vector<TateSummand>> by_degree;
    std::int64_t top = -1;
    for (std::size_t n = 0; n < c.length(); ++n) {
        for (const auto& g : c.term(n)) top = std::max(top, static_cast<std::int64_t>(n) + 2 * g.twist);
    }
    for (const auto& h : block_homology(c)) {
        const std::int64_t degree = static_cast<std::int64_t>(h.term) + 2 * h.twist;
        auto& bucket = by_degree[degree];
        bucket.push_back(TateSummand::free(h.free_rank, h.twist));
        for (const auto& t : h.torsion) bucket.push_back(TateSummand::torsion(t, h.twist));
    }
    for (std::size_t n = 0; n < c.length(); ++n) {
        std::map<std::pair<std::string, std::int64_t>, Integer> survivors;
        const auto& term = c.term(n);
        for (std::size_t i = 0; i < term.size(); ++i) {
            if (term[i].label.empty() || touched[n].count(i)) continue;
            survivors[{term[i].label, term[i].twist}] += 1;
        }
        for (const auto& [key, count] : survivors) {
            by_degree[static_cast<std::int64_t>(n) + 2 * key.second].push_back(
                TateSummand::artin(count, key.first, key.second));
        }
    }
    std::vector<ArtinTateMotive> out(static_cast<std::size_t>(top + 1));
    for (auto& [degree, summands] : by_degree) out[static_cast<std::size_t>(degree)] = ArtinTateMotive(std::move(summands));
    return out;
}

nlohmann::json to_record(const TateComplex& c) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : c.terms()) {
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : term) {
            nlohmann::json j{{"q", g.twist}};
            if (!g.label.empty()) j["label"] = g.label;
            gens.push_back(std::move(j));
        }
        terms.push_back(std::move(gens));
    }
    nlohmann::json diffs = nlohmann::json::array();
    for (const auto& d : c.differentials()) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < d.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t col = 0; col < d.cols(); ++col) row.push_back(detail::integer_to_json(d(r, col)));
            rows.push_back(std::move(row));
        }
        diffs.push_back(std::move(rows));
    }
    return {{"terms", std::move(terms)}, {"differentials", std::move(diffs)}};
}

TateComplex complex_from_record(const nlohmann::json& record) {
    using detail::require;
    const auto& terms_j = require(record, "terms", "complex");
    if (!terms_j.is_array()) throw Error(ErrorCode::Parse, "complex.terms: expected an array");
    std::vector<std::vector<Generator>> terms;
    for (std::size_t n = 0; n < terms_j.size(); ++n) {
        const std::string path = "complex.terms[" + std::to_string(n) + "]";
        if (!terms_j[n].is_array()) throw Error(ErrorCode::Parse, path + ": expected an array");
        std::vector<Generator> gens;
        for (std::size_t i = 0; i < terms_j[n].size(); ++i) {
            const std::string gpath = path + "[" + std::to_string(i) + "]";
            const auto& g = terms_j[n][i];
            Generator gen;
            gen.twist = detail::int64_from_json(require(g, "q", gpath), gpath + ".q");
            if (auto it = g.find("label"); it != g.end() && !it->is_null()) {
                if (!it->is_string()) throw Error(ErrorCode::Parse, gpath + ".label: expected a string");
                gen.label = it->get<std::string>();
            }
            gens.push_back(std::move(gen));
        }
        terms.push_back(std::move(gens));
    }
    std::vector<IntMatrix> diffs;
    const auto& diffs_j = require(record, "differentials", "complex");
    if (!diffs_j.is_array()) throw Error(ErrorCode::Parse, "complex.differentials: expected an array");
    for (std::size_t k = 0; k < diffs_j.size(); ++k) {
        const std::string path = "complex.differentials[" + std::to_string(k) + "]";
        if (k + 1 >= terms.size()) throw Error(ErrorCode::Parse, path + ": more differentials than terms allow");
        const std::size_t rows = terms[k].size();
        const std::size_t cols = terms[k + 1].size();
        const auto& m = diffs_j[k];
        if (!m.is_array() || m.size() != rows) {
            throw Error(ErrorCode::Parse, path + ": expected " + std::to_string(rows) + " rows");
        }
        IntMatrix d(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!m[r].is_array() || m[r].size() != cols) {
                throw Error(ErrorCode::Parse, path + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) +
                                                  " entries");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                d(r, c) = detail::integer_from_json(m[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
            }
        }
        diffs.push_back(std::move(d));
    }
    return TateComplex(std::move(terms), std::move(diffs));
}

}  // namespace motinf::motives
