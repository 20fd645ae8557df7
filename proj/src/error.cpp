#include "bdtw/error.hpp"

namespace bdtw {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kInvalidSeries: return "InvalidSeries";
        case ErrorCode::kParse: return "ParseError";
        case ErrorCode::kDecodeTooLarge: return "DecodeTooLarge";
        case ErrorCode::kTooLarge: return "TooLarge";
        case ErrorCode::kInfeasible: return "Infeasible";
        case ErrorCode::kKeyBoundExceeded: return "KeyBoundExceeded";
        case ErrorCode::kExhausted: return "Exhausted";
    }
    return "Unknown";
}

ParseError::ParseError(std::string source, std::size_t line, std::size_t column,
                       const std::string& reason)
    : Error(ErrorCode::kParse, source + ":" + std::to_string(line) + ":" +
                                   std::to_string(column) + ": " + reason),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

}  // namespace bdtw
