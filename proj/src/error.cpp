#include "motinf/error.hpp"

namespace motinf {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::WrongField: return "WrongField";
    case ErrorCode::OddDegree: return "OddDegree";
    case ErrorCode::OddSelfIntersection: return "OddSelfIntersection";
    case ErrorCode::NonRationalPoint: return "NonRationalPoint";
    case ErrorCode::NonPermutationArtinDifferential: return "NonPermutationArtinDifferential";
    case ErrorCode::MissingFaceData: return "MissingFaceData";
    case ErrorCode::InconsistentFaceData: return "InconsistentFaceData";
    case ErrorCode::TooManyHyperplanes: return "TooManyHyperplanes";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace motinf
