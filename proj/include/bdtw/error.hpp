#ifndef BDTW_ERROR_HPP
#define BDTW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdtw {

enum class ErrorCode {
    kInvalidSeries,
    kParse,
    kDecodeTooLarge,
    kTooLarge,
    kInfeasible,
    kKeyBoundExceeded,
    kExhausted,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Positions are 1-based, as printed in diagnostics.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, std::size_t column, const std::string& reason);

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string source_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace bdtw

#endif  // BDTW_ERROR_HPP
