#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frontspec {

enum class ErrorCode {
    Domain,          // argument outside the admissible set
    BranchTracking,  // Newton did not converge on a root branch
    Degeneracy,      // roots collided or discriminant has the wrong sign
    Pole,            // evaluation too close to a pole of the Huxley profile
    Sector,          // eps * A_ren left the right sector
    Input,           // non-finite samples handed to a discretization
    Numeric,         // eigensolver stagnation
    Window,          // bad decay-fit window
    Instability,     // time stepping blew up
    Tracking,        // front crossing missing or ambiguous
    Config,          // invalid run configuration
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Domain: return "domain";
        case ErrorCode::BranchTracking: return "branch_tracking";
        case ErrorCode::Degeneracy: return "degeneracy";
        case ErrorCode::Pole: return "pole";
        case ErrorCode::Sector: return "sector";
        case ErrorCode::Input: return "input";
        case ErrorCode::Numeric: return "numeric";
        case ErrorCode::Window: return "window";
        case ErrorCode::Instability: return "instability";
        case ErrorCode::Tracking: return "tracking";
        case ErrorCode::Config: return "config";
    }
    return "unknown";
}

/// Single exception type for the library; the code says which contract broke.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace frontspec
