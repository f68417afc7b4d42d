#include "pitchtrack/kalman.hpp"

#include <algorithm>
#include <cmath>

namespace pitchtrack {

namespace {
constexpr double kVarianceFloor = 1e-6;  // keeps g < 1 on constant input
constexpr double kVarianceCap = 1e12;
}  // namespace

ObservationStats update_observation_stats(const ObservationStats& stats,
                                          double observation,
                                          const KalmanConfig& cfg) {
  ObservationStats next = stats;
  if (next.count == 0) {
    next.mean = observation;
  } else {
    next.mean = cfg.alpha * observation + (1.0 - cfg.alpha) * next.mean;
  }
  next.residuals.push_back(observation - next.mean);
  while (static_cast<int>(next.residuals.size()) > cfg.l_window) {
    next.residuals.pop_front();
  }
  double acc = 0.0;
  for (double r : next.residuals) acc += r * r;
  next.variance = acc / static_cast<double>(next.residuals.size());
  ++next.count;
  return next;
}

KalmanState kf_step(const KalmanState& state, double observation,
                    double sigma2_obs, const KalmanConfig& cfg) {
  sigma2_obs = std::min(sigma2_obs, kVarianceCap);
  const double predicted_estimate = state.estimate;
  const double predicted_var = state.error_var + cfg.sigma2_delta0;

  KalmanState next;
  const double denom = predicted_var + sigma2_obs;
  next.gain = denom > 0.0 ? predicted_var / denom : 1.0;
  next.estimate =
      predicted_estimate + next.gain * (observation - predicted_estimate);
  next.error_var = (1.0 - next.gain) * predicted_var;
  return next;
}

FilterOutput run_forward(const std::vector<double>& observations,
                         const KalmanConfig& cfg) {
  if (observations.empty()) {
    throw std::invalid_argument("empty observation sequence");
  }
  FilterOutput out;
  out.estimates.reserve(observations.size());
  out.variances.reserve(observations.size());

  KalmanState state{observations[0], cfg.p0_init, 0.0};
  ObservationStats stats =
      update_observation_stats(ObservationStats{}, observations[0], cfg);
  stats.variance = std::max(stats.variance, cfg.sigma2_delta0);

  out.estimates.push_back(state.estimate);
  out.variances.push_back(stats.variance);

  for (std::size_t k = 1; k < observations.size(); ++k) {
    stats = update_observation_stats(stats, observations[k], cfg);
    const double sigma2 = std::max(stats.variance, kVarianceFloor);
    state = kf_step(state, observations[k], sigma2, cfg);
    out.estimates.push_back(state.estimate);
    out.variances.push_back(sigma2);
  }
  return out;
}

FilterOutput run_backward(const std::vector<double>& observations,
                          const KalmanConfig& cfg) {
  std::vector<double> reversed(observations.rbegin(), observations.rend());
  FilterOutput out = run_forward(reversed, cfg);
  std::reverse(out.estimates.begin(), out.estimates.end());
  std::reverse(out.variances.begin(), out.variances.end());
  return out;
}

double fuse(double fwd_estimate, double fwd_variance, double bwd_estimate,
            double bwd_variance) {
  const double denom = fwd_variance + bwd_variance;
  if (denom <= 0.0) return 0.5 * (fwd_estimate + bwd_estimate);
  return (bwd_variance * fwd_estimate + fwd_variance * bwd_estimate) / denom;
}

double to_frequency(double lag, int sample_rate, double f_min, double f_max) {
  if (!(lag > 0.0)) {
    throw std::logic_error("non-positive fused lag");
  }
  return std::clamp(sample_rate / lag, f_min, f_max);
}

}  // namespace pitchtrack
