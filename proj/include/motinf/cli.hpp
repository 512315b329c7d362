#pragma once

#include "motinf/gw.hpp"

#include "json.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace motinf::cli {

inline constexpr const char* tool_version = "motinf 0.1.0";

enum ExitCode : int { Success = 0, ValidationFailure = 2, UnsupportedFeature = 3 };

struct RunReport {
    std::string tool_version;
    std::string input_digest;
    std::string subcommand;
    nlohmann::json result;
    std::vector<std::string> warnings;
};

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Digest of the canonical serialization (sorted keys, no whitespace).
std::string canonical_digest(const nlohmann::json& input);

nlohmann::json to_record(const RunReport& r);

/// Parses sums, differences and products of integers, "<1>", "<-1>", "<u>",
/// "<a>" for a nonzero integer a, "H" and "n_eps(k)". An integer directly
/// followed by a term multiplies it ("2<1>", "3H"). Throws Error(Parse) with
/// the position in the message.
gw::GwElement parse_gw_expression(const std::string& text, const gw::Field& field);

/// Runs one invocation; args exclude the program name. Writes the report to
/// `out` and diagnostics to `err`, returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motinf::cli
