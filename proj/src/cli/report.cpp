#include "motinf/cli.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <stdexcept>

namespace motinf::cli {

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        char buf[3];
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string canonical_digest(const nlohmann::json& input) { return sha256_hex(input.dump()); }

nlohmann::json to_record(const RunReport& r) {
    return {{"tool_version", r.tool_version},
            {"input_digest", r.input_digest},
            {"subcommand", r.subcommand},
            {"result", r.result},
            {"warnings", r.warnings}};
}

}  // namespace motinf::cli
