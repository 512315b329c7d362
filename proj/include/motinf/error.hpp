#pragma once

#include <stdexcept>
#include <string>

namespace motinf {

enum class ErrorCode {
    InvalidArgument,
    InvalidField,
    WrongField,
    OddDegree,
    OddSelfIntersection,
    NonRationalPoint,
    NonPermutationArtinDifferential,
    MissingFaceData,
    InconsistentFaceData,
    TooManyHyperplanes,
    Parse,
};

/// Thrown by every module. The code decides the CLI exit status:
/// OddSelfIntersection and NonRationalPoint are unsupported features (3),
/// everything else is an input validation failure (2).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    bool unsupported_feature() const noexcept {
        return code_ == ErrorCode::OddSelfIntersection || code_ == ErrorCode::NonRationalPoint;
    }

private:
    ErrorCode code_;
};

const char* to_string(ErrorCode code);

}  // namespace motinf
