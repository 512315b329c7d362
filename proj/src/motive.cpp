#include "motinf/motive.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace motinf::motives {

namespace {

std::string suffix(std::int64_t q, std::int64_t p) {
    std::string s;
    if (q != 0) s += "(" + std::to_string(q) + ")";
    if (p != 0) s += "[" + std::to_string(p) + "]";
    return s;
}

const char* kind_name(TateSummand::Kind k) {
    switch (k) {
    case TateSummand::Kind::Free: return "free";
    case TateSummand::Kind::Torsion: return "torsion";
    case TateSummand::Kind::Artin: return "artin";
    }
    return "?";
}

}  // namespace

bool canonical_less(const TateSummand& a, const TateSummand& b) {
    return std::tie(a.kind, a.twist, a.shift, a.count, a.label) < std::tie(b.kind, b.twist, b.shift, b.count, b.label);
}

ArtinTateMotive::ArtinTateMotive(std::vector<TateSummand> summands, bool split_assumed)
    : summands_(std::move(summands)), split_assumed_(split_assumed) {
    for (const auto& s : summands_) {
        switch (s.kind) {
        case TateSummand::Kind::Free:
            if (s.count < 0) throw Error(ErrorCode::InvalidArgument, "negative multiplicity in free summand");
            break;
        case TateSummand::Kind::Torsion:
            if (s.count < 2) throw Error(ErrorCode::InvalidArgument, "torsion order must be at least 2");
            break;
        case TateSummand::Kind::Artin:
            if (s.count < 1) throw Error(ErrorCode::InvalidArgument, "Artin summand rank must be positive");
            if (s.label.empty()) throw Error(ErrorCode::InvalidArgument, "Artin summand needs a label");
            break;
        }
    }
    canonicalize();
}

void ArtinTateMotive::canonicalize() {
    std::vector<TateSummand> merged;
    for (auto& s : summands_) {
        if (s.kind != TateSummand::Kind::Free) {
            merged.push_back(std::move(s));
            continue;
        }
        auto it = std::find_if(merged.begin(), merged.end(), [&](const TateSummand& m) {
            return m.kind == TateSummand::Kind::Free && m.twist == s.twist && m.shift == s.shift;
        });
        if (it == merged.end()) {
            merged.push_back(std::move(s));
        } else {
            it->count += s.count;
        }
    }
    std::erase_if(merged, [](const TateSummand& s) { return s.kind == TateSummand::Kind::Free && s.count == 0; });
    std::sort(merged.begin(), merged.end(), canonical_less);
    summands_ = std::move(merged);
}

Integer ArtinTateMotive::free_rank() const {
    Integer n = 0;
    for (const auto& s : summands_) {
        if (s.kind == TateSummand::Kind::Free) n += s.count;
    }
    return n;
}

ArtinTateMotive ArtinTateMotive::twisted(std::int64_t dq, std::int64_t dp) const {
    auto copy = summands_;
    for (auto& s : copy) {
        s.twist += dq;
        s.shift += dp;
    }
    return ArtinTateMotive(std::move(copy), split_assumed_);
}

ArtinTateMotive ArtinTateMotive::operator+(const ArtinTateMotive& other) const {
    auto all = summands_;
    all.insert(all.end(), other.summands_.begin(), other.summands_.end());
    return ArtinTateMotive(std::move(all), split_assumed_ || other.split_assumed_);
}

std::string pretty(const ArtinTateMotive& m) {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& s : m.summands()) {
        if (!first) os << " + ";
        first = false;
        switch (s.kind) {
        case TateSummand::Kind::Free:
            if (s.count != 1) os << s.count << "*";
            os << "1" << suffix(s.twist, s.shift);
            break;
        case TateSummand::Kind::Torsion:
            os << "(1/" << s.count << ")" << suffix(s.twist, s.shift);
            break;
        case TateSummand::Kind::Artin:
            os << "M(" << s.label;
            if (s.count != 1) os << "^" << s.count;
            os << ")" << suffix(s.twist, s.shift);
            break;
        }
    }
    return os.str();
}

nlohmann::json to_record(const ArtinTateMotive& m) {
    nlohmann::json summands = nlohmann::json::array();
    for (const auto& s : m.summands()) {
        nlohmann::json j;
        j["kind"] = kind_name(s.kind);
        switch (s.kind) {
        case TateSummand::Kind::Free: j["mult"] = detail::integer_to_json(s.count); break;
        case TateSummand::Kind::Torsion: j["n"] = detail::integer_to_json(s.count); break;
        case TateSummand::Kind::Artin:
            j["rank"] = detail::integer_to_json(s.count);
            j["label"] = s.label;
            break;
        }
        j["q"] = s.twist;
        j["p"] = s.shift;
        summands.push_back(std::move(j));
    }
    return {{"summands", std::move(summands)}, {"split_assumed", m.split_assumed()}};
}

ArtinTateMotive motive_from_record(const nlohmann::json& record) {
    using detail::require;
    const auto& list = require(record, "summands", "motive");
    if (!list.is_array()) throw Error(ErrorCode::Parse, "motive.summands: expected an array");
    std::vector<TateSummand> summands;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "motive.summands[" + std::to_string(i) + "]";
        const auto& j = list[i];
        const auto& kind = require(j, "kind", path);
        if (!kind.is_string()) throw Error(ErrorCode::Parse, path + ".kind: expected a string");
        TateSummand s;
        const auto& k = kind.get_ref<const std::string&>();
        if (k == "free") {
            s.kind = TateSummand::Kind::Free;
            s.count = detail::integer_from_json(require(j, "mult", path), path + ".mult");
        } else if (k == "torsion") {
            s.kind = TateSummand::Kind::Torsion;
            s.count = detail::integer_from_json(require(j, "n", path), path + ".n");
        } else if (k == "artin") {
            s.kind = TateSummand::Kind::Artin;
            s.count = detail::integer_from_json(require(j, "rank", path), path + ".rank");
            const auto& label = require(j, "label", path);
            if (!label.is_string()) throw Error(ErrorCode::Parse, path + ".label: expected a string");
            s.label = label.get<std::string>();
        } else {
            throw Error(ErrorCode::Parse, path + ".kind: unknown kind '" + k + "'");
        }
        s.twist = detail::int64_from_json(require(j, "q", path), path + ".q");
        s.shift = detail::int64_from_json(require(j, "p", path), path + ".p");
        summands.push_back(std::move(s));
    }
    bool split = false;
    if (auto it = record.find("split_assumed"); it != record.end()) {
        if (!it->is_boolean()) throw Error(ErrorCode::Parse, "motive.split_assumed: expected a boolean");
        split = it->get<bool>();
    }
    try {
        return ArtinTateMotive(std::move(summands), split);
    } catch (const Error& e) {
        throw Error(ErrorCode::Parse, std::string("motive: ") + e.what());
    }
}

}  // namespace motinf::motives
