#include "motinf/gw_records.hpp"

#include "json_util.hpp"

namespace motinf::gw {

nlohmann::json to_record(const Field& f) {
    switch (f.kind()) {
        case Field::Kind::QuadraticallyClosed:
            return {{"kind", "qc"}};
        case Field::Kind::RealClosed:
            return {{"kind", "rc"}};
        case Field::Kind::Finite:
            return {{"kind", "fq"}, {"q", f.order()}};
    }
    return {};
}

Field field_from_record(const nlohmann::json& j) {
    if (j.is_string()) {
        try {
            return Field::parse(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, std::string("field: ") + e.what());
        }
    }
    const auto& kind = detail::require(j, "kind", "field");
    if (!kind.is_string()) throw Error(ErrorCode::Parse, "field.kind: expected a string");
    const auto& k = kind.get_ref<const std::string&>();
    if (k == "qc") return Field::quadratically_closed();
    if (k == "rc") return Field::real_closed();
    if (k == "fq") {
        const auto q = detail::int64_from_json(detail::require(j, "q", "field"), "field.q");
        if (q <= 0) throw Error(ErrorCode::InvalidField, "field.q: expected an odd prime power, got " + std::to_string(q));
        return Field::finite(static_cast<std::uint64_t>(q));
    }
    throw Error(ErrorCode::Parse, "field.kind: unknown kind '" + k + "'");
}

nlohmann::json to_record(const GwElement& x) {
    nlohmann::json j{{"field", to_record(x.field())}, {"rank", detail::integer_to_json(x.rank())}};
    if (x.field().kind() == Field::Kind::RealClosed) j["sig"] = detail::integer_to_json(x.signature());
    if (x.field().kind() == Field::Kind::Finite) j["disc_bit"] = x.disc_bit();
    return j;
}

GwElement gw_from_record(const nlohmann::json& j, const std::optional<Field>& field) {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "element: expected an object");
    std::optional<Field> f = field;
    if (auto it = j.find("field"); it != j.end()) {
        const Field own = field_from_record(*it);
        if (f && !(*f == own)) {
            throw Error(ErrorCode::WrongField, "element over " + own.to_string() + " where " + f->to_string() + " is expected");
        }
        f = own;
    }
    if (!f) throw Error(ErrorCode::Parse, "element.field: missing");
    const Integer rank = detail::integer_from_json(detail::require(j, "rank", "element"), "element.rank");
    Integer aux = 0;
    const bool has_sig = j.contains("sig");
    const bool has_disc = j.contains("disc_bit");
    switch (f->kind()) {
        case Field::Kind::QuadraticallyClosed:
            if (has_sig || has_disc) throw Error(ErrorCode::WrongField, "element: no auxiliary invariant over qc");
            break;
        case Field::Kind::RealClosed:
            if (has_disc) throw Error(ErrorCode::WrongField, "element.disc_bit: only meaningful over fq");
            aux = has_sig ? detail::integer_from_json(j["sig"], "element.sig") : rank;
            break;
        case Field::Kind::Finite:
            if (has_sig) throw Error(ErrorCode::WrongField, "element.sig: only meaningful over rc");
            if (has_disc) {
                const auto c = detail::int64_from_json(j["disc_bit"], "element.disc_bit");
                if (c != 0 && c != 1) throw Error(ErrorCode::Parse, "element.disc_bit: expected 0 or 1");
                aux = c;
            }
            break;
    }
    try {
        return GwElement::from_invariants(*f, rank, aux);
    } catch (const Error& e) {
        throw Error(ErrorCode::Parse, std::string("element: ") + e.what());
    }
}

nlohmann::json to_record(const GwMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            auto e = to_record(m(r, c));
            e.erase("field");
            row.push_back(std::move(e));
        }
        rows.push_back(std::move(row));
    }
    return {{"field", to_record(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

nlohmann::json to_record(const ElementaryOp& op) {
    nlohmann::json j{{"i", op.i}};
    switch (op.kind) {
        case ElementaryOp::Kind::Swap:
            j["op"] = "swap";
            j["j"] = op.j;
            break;
        case ElementaryOp::Kind::AddMultiple:
            j["op"] = "add_multiple";
            j["j"] = op.j;
            j["factor"] = op.factor.to_string();
            break;
        case ElementaryOp::Kind::Scale:
            j["op"] = "scale";
            j["factor"] = op.factor.to_string();
            break;
    }
    return j;
}

nlohmann::json to_record(const DiagonalizationResult& d) {
    nlohmann::json diag = nlohmann::json::array();
    for (const auto& x : d.diagonal) diag.push_back(x.to_string());
    nlohmann::json left = nlohmann::json::array();
    for (const auto& op : d.left_ops) left.push_back(to_record(op));
    nlohmann::json right = nlohmann::json::array();
    for (const auto& op : d.right_ops) right.push_back(to_record(op));
    nlohmann::json rank = nlohmann::json::array();
    for (const auto& x : d.rank_snf) rank.push_back(detail::integer_to_json(x));
    nlohmann::json j{{"rows", d.rows},
                     {"cols", d.cols},
                     {"diagonal", std::move(diag)},
                     {"unit_count", d.unit_count},
                     {"residual_block", nullptr},
                     {"left_ops", std::move(left)},
                     {"right_ops", std::move(right)},
                     {"rank_snf", std::move(rank)}};
    if (d.residual_block) j["residual_block"] = to_record(*d.residual_block);
    if (d.signature_snf) {
        nlohmann::json sig = nlohmann::json::array();
        for (const auto& x : *d.signature_snf) sig.push_back(detail::integer_to_json(x));
        j["signature_snf"] = std::move(sig);
    }
    return j;
}

}  // namespace motinf::gw
