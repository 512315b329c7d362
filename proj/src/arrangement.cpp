#include "motinf/arrangement.hpp"

#include "json_util.hpp"
#include "motinf/error.hpp"

#include <algorithm>

namespace motinf::arrangement {

using motives::ArtinTateMotive;
using motives::TateSummand;

namespace {

using Vec = std::vector<Rational>;

Vec augmented(const Hyperplane& h) {
    Vec v = h.normal;
    v.push_back(h.constant);
    return v;
}

bool proportional(const Vec& a, const Vec& b) {
    // a = λ b for some λ != 0 iff all 2x2 minors vanish (neither is zero).
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (a[i] * b[j] != a[j] * b[i]) return false;
        }
    }
    return true;
}

// Echelon basis of augmented rows; pivots always lie in the normal part.
struct Echelon {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;

    enum class Outcome { Independent, Dependent, Inconsistent };

    Outcome insert(Vec v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational f = v[pivots[r]];
            if (f == 0) continue;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= f * rows[r][k];
        }
        const std::size_t d = v.size() - 1;
        std::size_t p = 0;
        while (p < d && v[p] == 0) ++p;
        if (p == d) return v[d] == 0 ? Outcome::Dependent : Outcome::Inconsistent;
        const Rational lead = v[p];
        for (auto& x : v) x /= lead;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational f = rows[r][p];
            if (f == 0) continue;
            for (std::size_t k = 0; k < v.size(); ++k) rows[r][k] -= f * v[k];
        }
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return Outcome::Independent;
    }
};

void enumerate(const std::vector<Vec>& planes, std::size_t next, std::vector<std::size_t>& subset,
               const Echelon& basis, std::vector<StratumRow>& out) {
    for (std::size_t h = next; h < planes.size(); ++h) {
        Echelon extended = basis;
        if (extended.insert(planes[h]) == Echelon::Outcome::Inconsistent) continue;  // supersets are empty too
        subset.push_back(h);
        out.push_back({subset, subset.size(), extended.rows.size()});
        enumerate(planes, h + 1, subset, extended, out);
        subset.pop_back();
    }
}

std::string rational_to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

Rational rational_from_json(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(detail::integer_from_json(s, path));
            const Integer p = detail::integer_from_json(s.substr(0, slash), path);
            const Integer q = detail::integer_from_json(s.substr(slash + 1), path);
            if (q == 0) throw Error(ErrorCode::Parse, path + ": zero denominator");
            return Rational(p, q);
        } catch (const Error&) {
            throw Error(ErrorCode::Parse, path + ": expected an integer or a \"p/q\" string, got \"" + s + "\"");
        }
    }
    throw Error(ErrorCode::Parse, path + ": expected an integer or a \"p/q\" string");
}

nlohmann::json rational_to_json(const Rational& x) {
    if (denominator(x) == 1) return detail::integer_to_json(numerator(x));
    return rational_to_string(x);
}

std::int64_t as_int(std::size_t x) { return static_cast<std::int64_t>(x); }

}  // namespace

Arrangement::Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)) {
    if (dim_ < 1) throw Error(ErrorCode::InvalidArgument, "dim must be a positive integer");
    for (std::size_t h = 0; h < hyperplanes_.size(); ++h) {
        const auto& normal = hyperplanes_[h].normal;
        const std::string path = "hyperplanes[" + std::to_string(h) + "]";
        if (normal.size() != dim_) {
            throw Error(ErrorCode::InvalidArgument, path + ": normal has " + std::to_string(normal.size()) +
                                                        " coordinates, expected " + std::to_string(dim_));
        }
        if (std::all_of(normal.begin(), normal.end(), [](const Rational& x) { return x == 0; })) {
            throw Error(ErrorCode::InvalidArgument, path + ": zero normal vector");
        }
        for (std::size_t g = 0; g < h; ++g) {
            if (proportional(augmented(hyperplanes_[g]), augmented(hyperplanes_[h]))) {
                throw Error(ErrorCode::InvalidArgument,
                            path + ": duplicate of hyperplanes[" + std::to_string(g) + "]");
            }
        }
    }
}

StratumTable stratum_table(const Arrangement& a) {
    if (a.hyperplanes().size() > max_hyperplanes) {
        throw Error(ErrorCode::TooManyHyperplanes, std::to_string(a.hyperplanes().size()) +
                                                       " hyperplanes exceed the enumeration bound of " +
                                                       std::to_string(max_hyperplanes));
    }
    std::vector<Vec> planes;
    for (const auto& h : a.hyperplanes()) planes.push_back(augmented(h));

    StratumTable t;
    t.dim = a.dim();
    t.rows.push_back({});
    std::vector<std::size_t> subset;
    enumerate(planes, 0, subset, Echelon{}, t.rows);
    std::stable_sort(t.rows.begin(), t.rows.end(), [](const StratumRow& x, const StratumRow& y) {
        return std::tie(x.n, x.subset) < std::tie(y.n, y.subset);
    });

    t.nc_flag = std::all_of(t.rows.begin(), t.rows.end(), [](const StratumRow& r) { return r.c == r.n; });
    if (t.nc_flag) {
        std::vector<std::size_t> m(t.rows.back().n + 1, 0);
        for (const auto& r : t.rows) ++m[r.n];
        t.m_profile = std::move(m);
    }
    return t;
}

ArtinTateMotive homotopy_type(const StratumTable& t) {
    std::vector<TateSummand> s;
    for (const auto& r : t.rows) s.push_back(TateSummand::free(1, as_int(r.c), 2 * as_int(r.c) - as_int(r.n)));
    return ArtinTateMotive(std::move(s));
}

ArtinTateMotive compact_support_type(const StratumTable& t) {
    std::vector<TateSummand> s;
    const auto d = as_int(t.dim);
    for (const auto& r : t.rows) {
        const auto q = d - as_int(r.c);
        s.push_back(TateSummand::free(1, q, 2 * q + as_int(r.n)));
    }
    return ArtinTateMotive(std::move(s));
}

ArtinTateMotive homotopy_type_at_infinity(const StratumTable& t) {
    return homotopy_type(t) + compact_support_type(t).twisted(0, -1);
}

namespace {

const std::vector<std::size_t>& require_profile(const StratumTable& t) {
    if (!t.m_profile) throw Error(ErrorCode::InvalidArgument, "arrangement is not normal crossing; m(n) is undefined");
    return *t.m_profile;
}

}  // namespace

ArtinTateMotive homotopy_type_nc(const StratumTable& t) {
    const auto& m = require_profile(t);
    std::vector<TateSummand> s;
    for (std::size_t n = 0; n < m.size(); ++n) s.push_back(TateSummand::free(m[n], as_int(n), as_int(n)));
    return ArtinTateMotive(std::move(s));
}

ArtinTateMotive compact_support_type_nc(const StratumTable& t) {
    const auto& m = require_profile(t);
    const auto d = as_int(t.dim);
    std::vector<TateSummand> s;
    for (std::size_t n = 0; n < m.size(); ++n) {
        s.push_back(TateSummand::free(m[n], d - as_int(n), 2 * d - as_int(n)));
    }
    return ArtinTateMotive(std::move(s));
}

ArtinTateMotive homotopy_type_at_infinity_nc(const StratumTable& t) {
    return homotopy_type_nc(t) + compact_support_type_nc(t).twisted(0, -1);
}

Arrangement arrangement_from_record(const nlohmann::json& record) {
    const auto dim = detail::int64_from_json(detail::require(record, "dim", "arrangement"), "dim");
    if (dim < 1) throw Error(ErrorCode::Parse, "dim: expected a positive integer, got " + std::to_string(dim));
    std::vector<Hyperplane> hs;
    if (auto it = record.find("hyperplanes"); it != record.end()) {
        if (!it->is_array()) throw Error(ErrorCode::Parse, "hyperplanes: expected an array");
        for (std::size_t h = 0; h < it->size(); ++h) {
            const std::string path = "hyperplanes[" + std::to_string(h) + "]";
            const auto& row = (*it)[h];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(dim) + 1) {
                throw Error(ErrorCode::Parse, path + ": expected " + std::to_string(dim + 1) + " entries [a_1, ..., a_d, b]");
            }
            Hyperplane plane;
            for (std::size_t k = 0; k < row.size(); ++k) {
                Rational x = rational_from_json(row[k], path + "[" + std::to_string(k) + "]");
                if (k + 1 < row.size()) {
                    plane.normal.push_back(std::move(x));
                } else {
                    plane.constant = std::move(x);
                }
            }
            hs.push_back(std::move(plane));
        }
    }
    return Arrangement(static_cast<std::size_t>(dim), std::move(hs));
}

nlohmann::json to_record(const Arrangement& a) {
    nlohmann::json hs = nlohmann::json::array();
    for (const auto& h : a.hyperplanes()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : h.normal) row.push_back(rational_to_json(x));
        row.push_back(rational_to_json(h.constant));
        hs.push_back(std::move(row));
    }
    return {{"dim", a.dim()}, {"hyperplanes", std::move(hs)}};
}

nlohmann::json to_record(const StratumTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) rows.push_back({{"J", r.subset}, {"n", r.n}, {"c", r.c}});
    nlohmann::json j{{"dim", t.dim}, {"rows", std::move(rows)}, {"nc_flag", t.nc_flag}, {"m_profile", nullptr}};
    if (t.m_profile) j["m_profile"] = *t.m_profile;
    return j;
}

}  // namespace motinf::arrangement
