#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boomfleet {

enum class ErrorCode {
    invalid_workspace,
    invalid_scenario,
    point_in_obstacle,
    unreachable,
    placement_failure,
    invalid_routeset,
    capacity,
    config,
    numeric,
    domain,
    io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when no grid path joins two points. Carries the spill id when known.
class UnreachableError : public Error {
public:
    UnreachableError(const std::string& what, int spill_id = -1)
        : Error(ErrorCode::unreachable, what), spill_id_(spill_id)
    {
    }

    int spill_id() const noexcept { return spill_id_; }

private:
    int spill_id_;
};

}  // namespace boomfleet
