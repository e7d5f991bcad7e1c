#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "boomfleet/control.hpp"
#include "boomfleet/geometry.hpp"

namespace boomfleet {

enum class DubinsWord { LSL, RSR, LSR, RSL, RLR, LRL };

std::string to_string(DubinsWord w);

/// Shortest curvature-bounded path between two poses: three segments of
/// turn (L/R) or straight (S) motion. Segment lengths are in metres.
class DubinsPath : public PathCurve {
public:
    DubinsPath() = default;
    DubinsPath(Pose start, double rho, DubinsWord word, std::array<double, 3> segments);

    double length() const override { return segments_[0] + segments_[1] + segments_[2]; }
    Pose at(double s) const override;
    DubinsWord word() const { return word_; }
    const std::array<double, 3>& segments() const { return segments_; }
    double rho() const { return rho_; }

    /// Samples every `step` metres plus the end point.
    std::vector<Vec2> polyline(double step) const;

private:
    Pose start_;
    double rho_ = 1.0;
    DubinsWord word_ = DubinsWord::LSL;
    std::array<double, 3> segments_{0.0, 0.0, 0.0};
};

/// The path of one word, or nullopt when the word has no solution.
std::optional<DubinsPath> dubins_word(Pose start, Pose goal, double rho, DubinsWord word);

/// Shortest of the six words. Error(config) unless rho > 0.
DubinsPath dubins_path(Pose start, Pose goal, double rho);

}  // namespace boomfleet
