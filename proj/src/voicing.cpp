#include "pitchtrack/voicing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <unsupported/Eigen/FFT>

namespace pitchtrack {
namespace {

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

// Normalized ACF of the zero-mean frame, maximized over [lag_low, lag_high].
double periodic_similarity(const ArrayXd& x, int lag_low, int lag_high) {
  const Eigen::Index n = x.size();
  ArrayXd y = x - x.mean();
  const int hi = std::min<int>(lag_high, static_cast<int>(n) - 1);
  double best = -1.0;
  for (int l = lag_low; l <= hi; ++l) {
    const Eigen::Index m = n - l;
    const double num = (y.head(m) * y.tail(m)).sum();
    const double e0 = y.head(m).square().sum();
    const double e1 = y.tail(m).square().sum();
    const double den = std::sqrt(e0 * e1);
    if (den > 0.0) best = std::max(best, num / den);
  }
  return best;
}

double lowband_energy_ratio(const ArrayXd& x, double cutoff_hz,
                            int sample_rate) {
  Eigen::Index fft_size = 1;
  while (fft_size < x.size()) fft_size <<= 1;
  std::vector<double> in(static_cast<std::size_t>(fft_size), 0.0);
  for (Eigen::Index i = 0; i < x.size(); ++i) in[i] = x[i];
  std::vector<std::complex<double>> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, in);

  const Eigen::Index half = fft_size / 2;
  const double hz_per_bin = static_cast<double>(sample_rate) / fft_size;
  double low = 0.0, full = 0.0;
  for (Eigen::Index m = 0; m <= half; ++m) {
    const double p = std::norm(spec[m]);
    full += p;
    if (m * hz_per_bin <= cutoff_hz) low += p;
  }
  return full > 0.0 ? low / full : 0.0;
}

}  // namespace

std::vector<bool> power_gate(const std::vector<Frame>& frames, double ratio) {
  if (frames.empty()) throw std::invalid_argument("no frames");
  double mean = 0.0;
  for (const Frame& f : frames) mean += f.power;
  mean /= frames.size();
  const double threshold = ratio * mean;
  std::vector<bool> silent(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    silent[k] = frames[k].power < threshold;
  }
  return silent;
}

FeatureVector extract_features(const Frame& frame, bool silent,
                               const FeatureConfig& cfg) {
  FeatureVector out;
  out.is_silent = silent;
  if (silent) return out;

  const ArrayXd& x = frame.samples;
  const Eigen::Index n = x.size();
  const double energy = x.square().sum();
  if (energy <= 0.0) return out;  // zero-energy frame maps to the -1 pole

  // 1. periodic similarity, r_max -> 2 r_max - 1
  out.v[0] = clamp1(2.0 * periodic_similarity(x, cfg.lag_low, cfg.lag_high) -
                    1.0);

  // 2. zero-crossing rate, low ZCR -> positive
  int crossings = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (x[i] * x[i - 1] < 0.0) ++crossings;
  }
  out.v[1] = 1.0 - 2.0 * crossings / static_cast<double>(n - 1);

  // 3. spectrum tilt: lag-1 normalized autocorrelation
  const double r1 = (x.head(n - 1) * x.tail(n - 1)).sum();
  out.v[2] = clamp1(r1 / energy);

  // 4. pre-emphasized energy ratio
  ArrayXd pre = x.tail(n - 1) - cfg.preemph_coeff * x.head(n - 1);
  out.v[3] = clamp1(1.0 - 2.0 * pre.square().sum() / energy);

  // 5. low-band to full-band energy ratio
  out.v[4] = clamp1(
      2.0 * lowband_energy_ratio(x, cfg.lowband_cutoff_hz, cfg.sample_rate) -
      1.0);

  return out;
}

ClusterModel kmeans_two_class(const std::vector<FeatureVector>& features) {
  if (features.size() < 2) {
    throw std::invalid_argument("need at least two feature vectors");
  }
  const std::size_t n = features.size();
  FeatureVec mu0 = FeatureVec::Constant(-1.0);
  FeatureVec mu1 = FeatureVec::Constant(1.0);
  std::vector<int> labels(n, 0);

  constexpr int kMaxIterations = 100;
  for (int it = 0; it < kMaxIterations; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const FeatureVec& v = features[i].v;
      const int label = ((v - mu1).squaredNorm() < (v - mu0).squaredNorm())
                            ? 1
                            : 0;
      if (label != labels[i]) {
        labels[i] = label;
        changed = true;
      }
    }
    FeatureVec sum0 = FeatureVec::Zero(), sum1 = FeatureVec::Zero();
    int n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] == 0) {
        sum0 += features[i].v;
        ++n0;
      } else {
        sum1 += features[i].v;
        ++n1;
      }
    }
    if (n0 == 0 || n1 == 0) {
      throw DegenerateClassification(
          n0 == 0 ? "unvoiced cluster empty" : "voiced cluster empty",
          n0 == 0 ? 0 : 1);
    }
    mu0 = sum0 / n0;
    mu1 = sum1 / n1;
    if (!changed && it > 0) break;
  }

  ClusterModel model;
  model.m0 = mu0;
  model.m1 = mu1;
  model.labels = std::move(labels);
  model.scatter_within = MatrixXd::Zero(kNumFeatures, kNumFeatures);
  for (std::size_t i = 0; i < n; ++i) {
    const FeatureVec d =
        features[i].v - (model.labels[i] == 0 ? model.m0 : model.m1);
    model.scatter_within += d * d.transpose();
  }
  return model;
}

FeatureVec lda_weight(const ClusterModel& model) {
  constexpr double kRegEps = 1e-6;
  MatrixXd sw = model.scatter_within;
  sw += kRegEps * sw.trace() / kNumFeatures *
        MatrixXd::Identity(kNumFeatures, kNumFeatures);

  Eigen::FullPivLU<MatrixXd> lu(sw);
  if (!lu.isInvertible()) {
    throw std::runtime_error("within-class scatter is singular");
  }
  FeatureVec w = lu.solve(model.m0 - model.m1);
  if (w.dot(model.m1) < w.dot(model.m0)) w = -w;
  const double norm = w.norm();
  if (!(norm > 0.0) || !w.allFinite()) {
    throw std::runtime_error("degenerate discriminant direction");
  }
  return w / norm;
}

VoicingTrack classify(const std::vector<FeatureVector>& features,
                      const FeatureVec& w) {
  VoicingTrack track;
  track.labels.resize(features.size());
  track.scores.resize(features.size());
  for (std::size_t k = 0; k < features.size(); ++k) {
    const double score = w.dot(features[k].v);
    track.scores[k] = score;
    if (features[k].is_silent) {
      track.labels[k] = VoicingLabel::kSilent;
    } else {
      track.labels[k] =
          score > 0.0 ? VoicingLabel::kVoiced : VoicingLabel::kUnvoiced;
    }
  }
  return track;
}

}  // namespace pitchtrack
