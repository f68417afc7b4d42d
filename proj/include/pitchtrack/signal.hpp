#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

// Number of full frames that fit; a trailing partial frame is dropped.
int num_frames(Eigen::Index num_samples, const FramingConfig& cfg);

// Splits the buffer into frames of cfg.frame_length every cfg.hop_length
// samples. Frame power is computed on the raw samples; no window is applied
// here. Throws if the buffer is shorter than one frame.
std::vector<Frame> frame_signal(const AudioBuffer& buf,
                                const FramingConfig& cfg);

// Builds a per-frame F0 contour f0 + depth*sin(2*pi*rate*t) sampled at frame
// centers, for synthesize().
SynthSpec make_synth_spec(double f0_hz, double duration_s, int num_harmonics,
                          double harmonic_rolloff_db, double vibrato_depth_hz,
                          double vibrato_rate_hz, int sample_rate,
                          const FramingConfig& framing);

// Phase-continuous harmonic complex following the spec's contour. Harmonic h
// (1-based) is attenuated by (h-1)*harmonic_rolloff_db; the sum is scaled so
// the waveform stays inside [-1, 1]. Also returns the exact reference track
// (every frame voiced at the contour value).
std::pair<AudioBuffer, PitchTrack> synthesize(const SynthSpec& spec,
                                              int sample_rate,
                                              const FramingConfig& framing);

struct MixResult {
  AudioBuffer mixed;
  double noise_gain = 0.0;  // gain applied to the noise before adding
};

// Adds noise scaled so 10*log10(P_clean / P_scaled_noise) == snr_db, with
// powers measured over the full clean-signal support. Noise shorter than the
// clean signal is looped with a random circular offset drawn from `seed`.
// |snr_db| must be <= 60.
MixResult mix_at_snr(const AudioBuffer& clean, const AudioBuffer& noise,
                     double snr_db, uint64_t seed = 0);

// White noise in [-1, 1] scaled to unit variance, deterministic in the seed.
AudioBuffer white_noise(Eigen::Index num_samples, int sample_rate,
                        uint64_t seed);

}  // namespace pitchtrack
