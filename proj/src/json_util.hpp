#pragma once

#include "motinf/error.hpp"
#include "motinf/integer.hpp"

#include "json.hpp"

#include <string>

namespace motinf::detail {

inline nlohmann::json integer_to_json(const Integer& x) {
    if (fits_int64(x)) return static_cast<std::int64_t>(x);
    return x.str();
}

inline Integer integer_from_json(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const bool digits = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                            s != "-";
        if (digits) return Integer(s);
    }
    throw Error(ErrorCode::Parse, path + ": expected an integer");
}

inline std::int64_t int64_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer()) throw Error(ErrorCode::Parse, path + ": expected an integer");
    return j.get<std::int64_t>();
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw Error(ErrorCode::Parse, path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::Parse, path + "." + key + ": missing");
    return *it;
}

}  // namespace motinf::detail
