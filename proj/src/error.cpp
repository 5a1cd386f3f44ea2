#include "pettiest/error.hpp"

namespace pettiest {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid input";
        case ErrorKind::degenerate_column: return "degenerate column";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::numerical_failure: return "numerical failure";
        case ErrorKind::cannot_peel: return "cannot peel";
        case ErrorKind::insufficient_points: return "insufficient points";
        case ErrorKind::degenerate_data: return "degenerate data";
        case ErrorKind::size_cap: return "size cap exceeded";
        case ErrorKind::usage: return "usage error";
    }
    return "unknown error";
}

}  // namespace pettiest
