#pragma once

#include <stdexcept>
#include <string>

namespace pettiest {

enum class ErrorKind {
    invalid_input,
    degenerate_column,
    domain,
    numerical_failure,
    cannot_peel,
    insufficient_points,
    degenerate_data,
    size_cap,
    usage,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers (and the
/// CLI's exit-code mapping) what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace pettiest
