#pragma once

#include <vector>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

struct FeatureConfig {
  double preemph_coeff = 0.97;
  double lowband_cutoff_hz = 1000.0;
  int lag_low = 34;   // periodic-similarity search range, samples
  int lag_high = 267;
  int sample_rate = 16000;
};

struct FeatureVector {
  FeatureVec v = FeatureVec::Constant(-1.0);
  bool is_silent = false;
};

struct ClusterModel {
  FeatureVec m0;  // mean of the unvoiced-pole class
  FeatureVec m1;  // mean of the voiced-pole class
  std::vector<int> labels;
  MatrixXd scatter_within;  // D x D
};

// Marks frame k silent when P_x(k) < ratio * mean(P_x).
std::vector<bool> power_gate(const std::vector<Frame>& frames, double ratio);

// Five voicing features, each normalized into [-1, 1] with +1 leaning voiced.
// Silent and zero-energy frames map to the all-(-1) vector.
FeatureVector extract_features(const Frame& frame, bool silent,
                               const FeatureConfig& cfg);

// Lloyd's algorithm with fixed antipodal initialization (class 0 seeded at
// the -1 vector, class 1 at +1), squared Euclidean distance, at most 100
// iterations. Throws DegenerateClassification when a cluster ends up empty.
ClusterModel kmeans_two_class(const std::vector<FeatureVector>& features);

// Fisher weight S_w^-1 (m0 - m1), sign-oriented so voiced scores positive,
// unit norm. S_w is regularized with eps*trace/D on the diagonal.
FeatureVec lda_weight(const ClusterModel& model);

// Linear decision w^T v > 0 -> voiced; silent flags win over the score.
VoicingTrack classify(const std::vector<FeatureVector>& features,
                      const FeatureVec& w);

}  // namespace pitchtrack
