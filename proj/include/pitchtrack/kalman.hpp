#pragma once

#include <deque>
#include <vector>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

struct KalmanConfig {
  double sigma2_delta0 = 0.06;  // system-noise variance, lag^2
  int l_window = 8;             // observation-variance window, frames
  double alpha = 0.95;          // recursive-mean smoothing factor
  double p0_init = 0.6;         // initial error variance (10 * sigma2_delta0)
};

struct KalmanState {
  double estimate = 0.0;  // N_hat(k|k), samples
  double error_var = 0.0; // P_hat(k|k)
  double gain = 0.0;      // g(k), in [0, 1]
};

// Recursive observation mean and windowed ML variance. Each residual is
// taken against the mean value current at that observation's time.
struct ObservationStats {
  double mean = 0.0;
  double variance = 0.0;
  std::deque<double> residuals;  // last L residuals N(i) - mu(i)
  int count = 0;
};

ObservationStats update_observation_stats(const ObservationStats& stats,
                                          double observation,
                                          const KalmanConfig& cfg);

// One predict/correct cycle of the scalar filter. When both the predicted
// variance and the observation variance are zero the gain is 1.
KalmanState kf_step(const KalmanState& state, double observation,
                    double sigma2_obs, const KalmanConfig& cfg);

struct FilterOutput {
  std::vector<double> estimates;  // N_hat(k|k) per observation
  std::vector<double> variances;  // sigma2_obs used at each step
};

// Runs the filter over the observation sequence in order. The first
// observation initializes the state (estimate = N(0), P = p0_init) and is
// assigned variance sigma2_delta0.
FilterOutput run_forward(const std::vector<double>& observations,
                         const KalmanConfig& cfg);

// run_forward on the reversed sequence, outputs re-reversed.
FilterOutput run_backward(const std::vector<double>& observations,
                          const KalmanConfig& cfg);

// Inverse-variance ML fusion of the two passes; both variances zero falls
// back to the plain average.
double fuse(double fwd_estimate, double fwd_variance, double bwd_estimate,
            double bwd_variance);

// F0 = Fs / lag, clamped to [f_min, f_max].
double to_frequency(double lag, int sample_rate, double f_min, double f_max);

}  // namespace pitchtrack
