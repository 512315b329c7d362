#pragma once

#include "motinf/gw_matrix.hpp"

#include "json.hpp"

#include <optional>

namespace motinf::gw {

/// {"kind":"qc"} | {"kind":"rc"} | {"kind":"fq","q":q}; parsing also accepts
/// the short strings "qc", "rc", "fq:<q>".
nlohmann::json to_record(const Field& f);
Field field_from_record(const nlohmann::json& j);

/// {"field":{...},"rank":r,"sig":s} (rc) / {"field":{...},"rank":r,"disc_bit":c} (fq).
nlohmann::json to_record(const GwElement& x);
/// `field` supplies the field when the record omits it; a record field that
/// disagrees with `field` is an error.
GwElement gw_from_record(const nlohmann::json& j, const std::optional<Field>& field = {});

nlohmann::json to_record(const GwMatrix& m);
nlohmann::json to_record(const ElementaryOp& op);
nlohmann::json to_record(const DiagonalizationResult& d);

}  // namespace motinf::gw
