#pragma once

#include <string>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

// Core schema: frame,time_s,voiced,f0_hz with f0_hz empty on unvoiced
// frames. With debug=true, appends score,lag_obs,lag_fwd,var_fwd,lag_bwd,
// var_bwd columns. `scores` may be empty when no discriminant ran.
std::string track_to_csv(const PitchTrack& track,
                         const std::vector<double>& scores = {},
                         bool debug = false);

std::string track_to_json(const PitchTrack& track);

void write_track(const std::string& path, const std::string& content);

// Reads the core columns back; extra columns are ignored.
PitchTrack read_track_csv(const std::string& path);

}  // namespace pitchtrack
