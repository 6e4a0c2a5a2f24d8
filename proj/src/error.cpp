#include "ifslab/error.hpp"

namespace ifslab {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidAlphabet: return "invalid-alphabet";
        case ErrorCode::Index: return "index";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::MalformedInterval: return "malformed-interval";
        case ErrorCode::Empty: return "emptiness";
        case ErrorCode::Parameter: return "parameter";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::Structure: return "structure";
        case ErrorCode::Convergence: return "convergence";
        case ErrorCode::Degeneracy: return "degeneracy";
        case ErrorCode::Unsupported: return "unsupported-map";
        case ErrorCode::Shape: return "shape";
        case ErrorCode::Usage: return "usage";
        case ErrorCode::Budget: return "budget";
        case ErrorCode::DegenerateOutput: return "degenerate-output";
        case ErrorCode::Construction: return "construction";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace ifslab
