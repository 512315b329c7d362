#include "motinf/cech.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace motinf::motives {

std::vector<Generator> Stratum::generators() const {
    switch (kind) {
    case Kind::P1: return {Generator{0, {}}, Generator{1, {}}};
    case Kind::Points: return std::vector<Generator>(static_cast<std::size_t>(count), Generator{0, {}});
    case Kind::Artin: return std::vector<Generator>(static_cast<std::size_t>(count), Generator{0, label});
    }
    return {};
}

namespace {

std::string show(const Subset& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    return os.str();
}

class SubsetOrder {
public:
    explicit SubsetOrder(const std::vector<int>& order) {
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (!position_.emplace(order[i], i).second) {
                throw Error(ErrorCode::InvalidArgument, "element " + std::to_string(order[i]) + " repeated in order");
            }
        }
    }

    Subset normalize(Subset s) const {
        if (s.empty()) throw Error(ErrorCode::InvalidArgument, "strata are indexed by nonempty subsets");
        for (int x : s) {
            if (!position_.count(x)) {
                throw Error(ErrorCode::InvalidArgument, "subset " + show(s) + " uses element " + std::to_string(x) +
                                                            " missing from the order");
            }
        }
        std::sort(s.begin(), s.end(), [&](int a, int b) { return position_.at(a) < position_.at(b); });
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw Error(ErrorCode::InvalidArgument, "subset " + show(s) + " repeats an element");
        }
        return s;
    }

    bool less(const Subset& a, const Subset& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [&](int x, int y) { return position_.at(x) < position_.at(y); });
    }

private:
    std::map<int, std::size_t> position_;
};

Subset drop(const Subset& k, std::size_t index) {
    Subset j = k;
    j.erase(j.begin() + static_cast<std::ptrdiff_t>(index));
    return j;
}

IntMatrix automatic_face(const Stratum& source, const Stratum& target, const Subset& k, const Subset& j) {
    using Kind = Stratum::Kind;
    const std::string where = "face " + show(k) + " -> " + show(j);
    if (source.kind == Kind::Artin || target.kind == Kind::Artin) {
        throw Error(ErrorCode::MissingFaceData, where + " involves an Artin stratum; supply its matrix");
    }
    if (source.kind == Kind::P1 && target.kind == Kind::P1) return IntMatrix::identity(2);
    if (source.kind == Kind::P1) {
        throw Error(ErrorCode::InvalidArgument, where + ": a P1 stratum cannot lie inside a finite set of points");
    }
    const auto c = static_cast<std::size_t>(source.count);
    if (target.kind == Kind::P1) {
        IntMatrix m(2, c);
        for (std::size_t i = 0; i < c; ++i) m(0, i) = 1;
        return m;
    }
    if (target.count == 1) {
        IntMatrix m(1, c);
        for (std::size_t i = 0; i < c; ++i) m(0, i) = 1;
        return m;
    }
    throw Error(ErrorCode::MissingFaceData,
                where + ": pushforward between multi-point strata is not determined; supply its matrix");
}

}  // namespace

CechComplex ordered_cech_complex(const std::vector<int>& order, const std::map<Subset, Stratum>& strata,
                                 std::span<const FaceOverride> faces) {
    const SubsetOrder ord(order);

    std::map<Subset, Stratum> norm;
    for (const auto& [j, s] : strata) {
        if (s.count < 1) throw Error(ErrorCode::InvalidArgument, "stratum " + show(j) + " has nonpositive count");
        if (s.kind == Stratum::Kind::Artin && s.label.empty()) {
            throw Error(ErrorCode::InvalidArgument, "Artin stratum " + show(j) + " needs a label");
        }
        if (!norm.emplace(ord.normalize(j), s).second) {
            throw Error(ErrorCode::InvalidArgument, "stratum " + show(j) + " given twice");
        }
    }

    std::size_t top = 0;
    for (const auto& [j, s] : norm) top = std::max(top, j.size());

    CechComplex out;
    out.term_subsets.resize(top);
    for (const auto& [j, s] : norm) out.term_subsets[j.size() - 1].push_back(j);
    for (auto& subsets : out.term_subsets) {
        std::sort(subsets.begin(), subsets.end(), [&](const Subset& a, const Subset& b) { return ord.less(a, b); });
    }

    // Generator offsets of each subset inside its term.
    std::vector<std::vector<Generator>> terms(top);
    std::map<Subset, std::size_t> offset;
    for (std::size_t n = 0; n < top; ++n) {
        for (const auto& j : out.term_subsets[n]) {
            offset[j] = terms[n].size();
            auto gens = norm.at(j).generators();
            terms[n].insert(terms[n].end(), gens.begin(), gens.end());
        }
    }

    std::map<std::pair<Subset, Subset>, IntMatrix> overrides;
    for (const auto& f : faces) {
        Subset k = ord.normalize(f.source);
        Subset j = ord.normalize(f.target);
        if (!norm.count(k) || !norm.count(j)) {
            throw Error(ErrorCode::InvalidArgument, "face override " + show(f.source) + " -> " + show(f.target) +
                                                        " refers to a missing stratum");
        }
        const std::set<int> ks(k.begin(), k.end());
        const std::set<int> js(j.begin(), j.end());
        if (j.size() + 1 != k.size() || !std::includes(ks.begin(), ks.end(), js.begin(), js.end())) {
            throw Error(ErrorCode::InvalidArgument,
                        "face override " + show(k) + " -> " + show(j) + " does not drop exactly one element");
        }
        const auto rows = norm.at(j).generators().size();
        const auto cols = norm.at(k).generators().size();
        if (f.matrix.rows() != rows || f.matrix.cols() != cols) {
            throw Error(ErrorCode::InconsistentFaceData, "face override " + show(k) + " -> " + show(j) + " must be " +
                                                             std::to_string(rows) + "x" + std::to_string(cols));
        }
        overrides[{k, j}] = f.matrix;
    }

    // face[n][k] = δ_n^k : term n -> term n-1, for n >= 1 and 0 <= k <= n.
    std::vector<std::vector<IntMatrix>> face(top);
    for (std::size_t n = 1; n < top; ++n) {
        face[n].assign(n + 1, IntMatrix(terms[n - 1].size(), terms[n].size()));
        for (const auto& k : out.term_subsets[n]) {
            for (std::size_t idx = 0; idx <= n; ++idx) {
                Subset j = drop(k, idx);
                auto it = norm.find(j);
                if (it == norm.end()) {
                    throw Error(ErrorCode::InvalidArgument, "stratum " + show(k) + " is present but its face " + show(j) +
                                                                " is not");
                }
                auto ov = overrides.find({k, j});
                IntMatrix block = ov != overrides.end() ? ov->second : automatic_face(norm.at(k), it->second, k, j);
                const std::size_t r0 = offset.at(j);
                const std::size_t c0 = offset.at(k);
                for (std::size_t r = 0; r < block.rows(); ++r) {
                    for (std::size_t c = 0; c < block.cols(); ++c) face[n][idx](r0 + r, c0 + c) = block(r, c);
                }
            }
        }
    }

    // δ_{n-1}^i δ_n^j = δ_{n-1}^{j-1} δ_n^i for i < j.
    if (!overrides.empty()) {
        for (std::size_t n = 2; n < top; ++n) {
            for (std::size_t j = 1; j <= n; ++j) {
                for (std::size_t i = 0; i < j; ++i) {
                    if (!(face[n - 1][i] * face[n][j] == face[n - 1][j - 1] * face[n][i])) {
                        throw Error(ErrorCode::InconsistentFaceData,
                                    "face maps inconsistent at (n, k) = (" + std::to_string(n) + ", " + std::to_string(j) +
                                        "): d^" + std::to_string(i) + " d^" + std::to_string(j) + " != d^" +
                                        std::to_string(j - 1) + " d^" + std::to_string(i));
                    }
                }
            }
        }
    }

    std::vector<IntMatrix> diffs;
    for (std::size_t n = 1; n < top; ++n) {
        IntMatrix d(terms[n - 1].size(), terms[n].size());
        for (std::size_t k = 0; k <= n; ++k) {
            const IntMatrix& f = face[n][k];
            const int sign = k % 2 == 0 ? 1 : -1;
            for (std::size_t r = 0; r < d.rows(); ++r) {
                for (std::size_t c = 0; c < d.cols(); ++c) d(r, c) += sign * f(r, c);
            }
        }
        diffs.push_back(std::move(d));
    }
    for (std::size_t n = 2; n < top; ++n) {
        if (!(diffs[n - 2] * diffs[n - 1]).is_zero()) {
            throw Error(ErrorCode::InconsistentFaceData,
                        "d_" + std::to_string(n - 1) + " o d_" + std::to_string(n) + " != 0 at degree " + std::to_string(n));
        }
    }
    out.complex = TateComplex(std::move(terms), std::move(diffs));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Subset subset_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) throw Error(ErrorCode::Parse, path + ": expected an array of element ids");
    Subset s;
    for (std::size_t i = 0; i < j.size(); ++i) {
        s.push_back(static_cast<int>(detail::int64_from_json(j[i], path + "[" + std::to_string(i) + "]")));
    }
    return s;
}

IntMatrix matrix_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) throw Error(ErrorCode::Parse, path + ": expected an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw Error(ErrorCode::Parse, path + "[" + std::to_string(r) + "]: ragged row");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = detail::integer_from_json(j[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

}  // namespace

CechInput cech_input_from_record(const nlohmann::json& record) {
    using detail::require;
    CechInput in;
    const auto& strata = require(record, "strata", "cech");
    if (!strata.is_array()) throw Error(ErrorCode::Parse, "cech.strata: expected an array");
    std::set<int> elements;
    for (std::size_t i = 0; i < strata.size(); ++i) {
        const std::string path = "strata[" + std::to_string(i) + "]";
        const auto& s = strata[i];
        Subset j = subset_from_json(require(s, "J", path), path + ".J");
        const auto& kind = require(s, "kind", path);
        if (!kind.is_string()) throw Error(ErrorCode::Parse, path + ".kind: expected a string");
        const auto& k = kind.get_ref<const std::string&>();
        Stratum st;
        if (k == "p1") {
            st = Stratum::p1();
        } else if (k == "point") {
            std::int64_t n = 1;
            if (auto it = s.find("count"); it != s.end()) n = detail::int64_from_json(*it, path + ".count");
            st = Stratum::points(n);
        } else if (k == "artin") {
            std::int64_t r = detail::int64_from_json(require(s, "rank", path), path + ".rank");
            std::string label = "A" + std::to_string(i);
            if (auto it = s.find("label"); it != s.end()) {
                if (!it->is_string()) throw Error(ErrorCode::Parse, path + ".label: expected a string");
                label = it->get<std::string>();
            }
            st = Stratum::artin(r, label);
        } else {
            throw Error(ErrorCode::Parse, path + ".kind: unknown stratum kind '" + k + "' (p1, point, artin)");
        }
        if (st.count < 1) throw Error(ErrorCode::Parse, path + ": count/rank must be positive");
        elements.insert(j.begin(), j.end());
        std::sort(j.begin(), j.end());
        if (!in.strata.emplace(j, st).second) throw Error(ErrorCode::Parse, path + ".J: duplicate stratum");
    }
    if (auto it = record.find("order"); it != record.end()) {
        Subset o = subset_from_json(*it, "order");
        in.order.assign(o.begin(), o.end());
    } else {
        in.order.assign(elements.begin(), elements.end());
    }
    if (auto it = record.find("faces"); it != record.end()) {
        if (!it->is_array()) throw Error(ErrorCode::Parse, "faces: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "faces[" + std::to_string(i) + "]";
            const auto& f = (*it)[i];
            in.faces.push_back({subset_from_json(require(f, "from", path), path + ".from"),
                                subset_from_json(require(f, "to", path), path + ".to"),
                                matrix_from_json(require(f, "matrix", path), path + ".matrix")});
        }
    }
    return in;
}

nlohmann::json to_record(const CechInput& input) {
    nlohmann::json strata = nlohmann::json::array();
    for (const auto& [j, s] : input.strata) {
        nlohmann::json e{{"J", j}};
        switch (s.kind) {
        case Stratum::Kind::P1: e["kind"] = "p1"; break;
        case Stratum::Kind::Points:
            e["kind"] = "point";
            e["count"] = s.count;
            break;
        case Stratum::Kind::Artin:
            e["kind"] = "artin";
            e["rank"] = s.count;
            e["label"] = s.label;
            break;
        }
        strata.push_back(std::move(e));
    }
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : input.faces) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < f.matrix.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < f.matrix.cols(); ++c) row.push_back(detail::integer_to_json(f.matrix(r, c)));
            rows.push_back(std::move(row));
        }
        faces.push_back({{"from", f.source}, {"to", f.target}, {"matrix", std::move(rows)}});
    }
    return {{"order", input.order}, {"strata", std::move(strata)}, {"faces", std::move(faces)}};
}

}  // namespace motinf::motives
