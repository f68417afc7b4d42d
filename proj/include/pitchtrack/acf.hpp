#pragma once

#include <optional>
#include <vector>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

struct LagBounds {
  int n_low;
  int n_high;
};

// n_low = max{1, floor(Fs/F_max)}, n_high = min{ceil(Fs/F_min), N}.
LagBounds make_lag_bounds(int sample_rate, double f_min, double f_max,
                          int frame_length);

struct PitchObservation {
  int frame_index = 0;
  int lag = 0;        // argmax in [n_low, n_high]
  double peak = 0.0;  // blended correlation at the argmax
};

// Normalized time-domain ACF over [n_low, n_high]; each lag divides by the
// geometric mean of the two overlap energies. Zero-energy overlap gives 0.
ArrayXd time_acf(const Frame& frame, const LagBounds& bounds);

/// Frequency-domain ACF: magnitude spectrum of the Hann-windowed frame,
// correlated with itself shifted by fft_size/l bins (fractional, linearly
// interpolated) so that lag l probes the matching harmonic spacing.
// Normalized by the zero-shift energy so values sit in [0, 1].
ArrayXd spectral_acf(const Frame& frame, const LagBounds& bounds,
                     int fft_size);

// R_st = alpha_r * R_t + (1 - alpha_r) * R_s, argmax with ties broken toward
// the smallest lag.
PitchObservation spte_acf(const ArrayXd& r_time, const ArrayXd& r_spec,
                          double alpha_r, const LagBounds& bounds,
                          int frame_index);

// Single-frame label repair around the pitch estimator:
//   pass 1 (before estimation): V,U,V -> V,V,V
//   pass 2: observations pinned at a search boundary -> unvoiced
//   pass 3: U,V,U -> U,U,U
void fill_single_unvoiced(VoicingTrack& track);
void reject_boundary_lags(
    VoicingTrack& track,
    const std::vector<std::optional<PitchObservation>>& observations,
    const LagBounds& bounds);
void remove_single_voiced(VoicingTrack& track);

// All three passes in order, for callers that already have observations for
// every voiced frame.
VoicingTrack postprocess_voicing(
    const VoicingTrack& track,
    const std::vector<std::optional<PitchObservation>>& observations,
    const LagBounds& bounds);

}  // namespace pitchtrack
