#pragma once

#include "pitchtrack/config.hpp"
#include "pitchtrack/types.hpp"

namespace pitchtrack {

struct TrackResult {
  PitchTrack track;
  VoicingTrack voicing;  // final labels after post-processing
};

// Full pipeline: framing, silence gate, feature extraction, per-sentence
// k-means + LDA voicing decision, SpTe-ACF estimation with label repair,
// forward/backward filtering and fusion.
//
// When k-means leaves the unvoiced cluster empty (a fully voiced utterance,
// common for synthetic tones) every non-silent frame is treated as voiced.
// An empty voiced cluster propagates as DegenerateClassification.
TrackResult run_pipeline(const AudioBuffer& buf, const PipelineConfig& cfg);

}  // namespace pitchtrack
