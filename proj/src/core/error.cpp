#include "boomfleet/error.hpp"

namespace boomfleet {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_workspace: return "invalid-workspace";
    case ErrorCode::invalid_scenario: return "invalid-scenario";
    case ErrorCode::point_in_obstacle: return "point-in-obstacle";
    case ErrorCode::unreachable: return "unreachable";
    case ErrorCode::placement_failure: return "placement-failure";
    case ErrorCode::invalid_routeset: return "invalid-routeset";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::config: return "config";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::domain: return "domain";
    case ErrorCode::io: return "io";
    }
    return "unknown";
}

}  // namespace boomfleet
