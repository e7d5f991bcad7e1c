#pragma once

#include <string>
#include <vector>

#include "boomfleet/benchmark.hpp"
#include "boomfleet/tracking.hpp"

namespace boomfleet {

/// gnuplot pm3d blocks: "rho v_ref ct1 hd1 ct2 hd2", one blank line between rho rows.
std::string rmse_tsv(const RmseMap& map);

/// Heatmaps of cross-track and heading RMSE per vessel, one row of panels per map.
std::string rmse_svg(const std::vector<RmseMap>& maps);

/// "spills agents stage objective" averaged over seeds.
std::string objective_tsv(const std::vector<BenchmarkRow>& rows);

/// Objective against fleet size, one panel per spill count, one line per stage.
std::string objective_svg(const std::vector<BenchmarkRow>& rows);

}  // namespace boomfleet
