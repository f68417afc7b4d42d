#pragma once

#include <array>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

struct EvalReport {
  bool valid = false;       // false when no frame is voiced in both tracks
  double gpe_ratio = 0.0;   // 1 - N_e / K
  double mfpe = 0.0;        // mean relative error over fine frames
  int frames_scored = 0;    // K: frames voiced in both tracks
  int frames_fine = 0;      // N_e: scored frames without gross error
  // [ref voiced][est voiced] counts over all frames; silent counts unvoiced.
  std::array<std::array<int, 2>, 2> voicing_confusion{};
};

// 1 iff the relative error strictly exceeds 10%.
int gpe_indicator(double f0_ref, double f0_est);

// Scores the estimate against the reference over frames voiced in both
// tracks. Throws on mismatched frame counts.
EvalReport score(const PitchTrack& ref, const PitchTrack& est);

}  // namespace pitchtrack
