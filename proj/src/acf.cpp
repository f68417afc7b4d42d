#include "pitchtrack/acf.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace pitchtrack {

LagBounds make_lag_bounds(int sample_rate, double f_min, double f_max,
                          int frame_length) {
  LagBounds b;
  b.n_low = std::max(1, static_cast<int>(std::floor(sample_rate / f_max)));
  b.n_high = std::min(static_cast<int>(std::ceil(sample_rate / f_min)),
                      frame_length);
  if (b.n_low >= b.n_high) {
    throw std::invalid_argument("empty lag search range");
  }
  return b;
}

ArrayXd time_acf(const Frame& frame, const LagBounds& bounds) {
  const ArrayXd& x = frame.samples;
  const Eigen::Index n = x.size();
  if (n < bounds.n_high) {
    throw std::invalid_argument("frame shorter than n_high");
  }
  ArrayXd r(bounds.n_high - bounds.n_low + 1);
  for (int l = bounds.n_low; l <= bounds.n_high; ++l) {
    const Eigen::Index m = n - l;
    const double num = (x.head(m) * x.tail(m)).sum();
    const double den =
        std::sqrt(x.head(m).square().sum() * x.tail(m).square().sum());
    r[l - bounds.n_low] = den > 0.0 ? num / den : 0.0;
  }
  return r;
}

ArrayXd spectral_acf(const Frame& frame, const LagBounds& bounds,
                     int fft_size) {
  const Eigen::Index n = frame.samples.size();
  if (fft_size < n) throw std::invalid_argument("fft_size < frame length");
  if ((fft_size & (fft_size - 1)) != 0) {
    throw std::invalid_argument("fft_size must be a power of two");
  }

  std::vector<double> in(static_cast<std::size_t>(fft_size), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
    in[i] = frame.samples[i] * w;
  }
  std::vector<std::complex<double>> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, in);

  const int half = fft_size / 2;
  ArrayXd mag(half);
  for (int m = 0; m < half; ++m) mag[m] = std::abs(spec[m]);

  // Fixed zero-shift normalizer. Normalizing by the shifted-segment energy
  // instead biases the argmax: once the shift passes the first harmonic
  // peak the denominator collapses and inflates the correlation.
  const double r0 = mag.square().sum();
  ArrayXd r(bounds.n_high - bounds.n_low + 1);
  for (int l = bounds.n_low; l <= bounds.n_high; ++l) {
    const double shift = static_cast<double>(fft_size) / l;
    if (r0 <= 0.0 || shift >= half - 1) {
      r[l - bounds.n_low] = 0.0;
      continue;
    }
    // Fractional shift via linear interpolation; rounding to whole bins
    // quantizes neighboring lags onto the same shift.
    const int m_max = half - static_cast<int>(std::ceil(shift)) - 1;
    double acc = 0.0;
    for (int m = 0; m < m_max; ++m) {
      const double p = m + shift;
      const int i0 = static_cast<int>(p);
      const double frac = p - i0;
      acc += mag[m] * (mag[i0] * (1.0 - frac) + mag[i0 + 1] * frac);
    }
    r[l - bounds.n_low] = acc / r0;
  }
  return r;
}

PitchObservation spte_acf(const ArrayXd& r_time, const ArrayXd& r_spec,
                          double alpha_r, const LagBounds& bounds,
                          int frame_index) {
  if (r_time.size() != r_spec.size()) {
    throw std::invalid_argument("lag supports differ");
  }
  ArrayXd blended = alpha_r * r_time + (1.0 - alpha_r) * r_spec;
  PitchObservation obs;
  obs.frame_index = frame_index;
  obs.lag = bounds.n_low;
  obs.peak = blended[0];
  for (Eigen::Index i = 1; i < blended.size(); ++i) {
    if (blended[i] > obs.peak) {  // strict: ties keep the smallest lag
      obs.peak = blended[i];
      obs.lag = bounds.n_low + static_cast<int>(i);
    }
  }
  return obs;
}

void fill_single_unvoiced(VoicingTrack& track) {
  const auto n = track.labels.size();
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (track.labels[k] != VoicingLabel::kVoiced &&
        track.labels[k - 1] == VoicingLabel::kVoiced &&
        track.labels[k + 1] == VoicingLabel::kVoiced) {
      track.labels[k] = VoicingLabel::kVoiced;
    }
  }
}

void reject_boundary_lags(
    VoicingTrack& track,
    const std::vector<std::optional<PitchObservation>>& observations,
    const LagBounds& bounds) {
  for (std::size_t k = 0; k < track.labels.size(); ++k) {
    if (track.labels[k] != VoicingLabel::kVoiced) continue;
    if (k < observations.size() && observations[k].has_value()) {
      const int lag = observations[k]->lag;
      if (lag == bounds.n_low || lag == bounds.n_high) {
        track.labels[k] = VoicingLabel::kUnvoiced;
      }
    }
  }
}

void remove_single_voiced(VoicingTrack& track) {
  const auto n = track.labels.size();
  std::vector<VoicingLabel> out = track.labels;
  for (std::size_t k = 0; k < n; ++k) {
    if (track.labels[k] != VoicingLabel::kVoiced) continue;
    const bool prev_voiced =
        k > 0 && track.labels[k - 1] == VoicingLabel::kVoiced;
    const bool next_voiced =
        k + 1 < n && track.labels[k + 1] == VoicingLabel::kVoiced;
    if (!prev_voiced && !next_voiced) out[k] = VoicingLabel::kUnvoiced;
  }
  track.labels = std::move(out);
}

VoicingTrack postprocess_voicing(
    const VoicingTrack& track,
    const std::vector<std::optional<PitchObservation>>& observations,
    const LagBounds& bounds) {
  VoicingTrack out = track;
  fill_single_unvoiced(out);
  reject_boundary_lags(out, observations, bounds);
  remove_single_voiced(out);
  return out;
}

}  // namespace pitchtrack
