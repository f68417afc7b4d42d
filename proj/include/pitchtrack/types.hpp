#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace pitchtrack {

using Eigen::ArrayXd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Voicing feature dimension (periodic similarity, ZCR, tilt, pre-emphasis
// ratio, low-band ratio).
constexpr int kNumFeatures = 5;
using FeatureVec = Eigen::Matrix<double, kNumFeatures, 1>;

struct AudioBuffer {
  ArrayXd samples;  // nominal range [-1, 1]
  int sample_rate = 0;

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class WindowType { kRectangular, kHann, kHamming };

struct FramingConfig {
  int frame_length = 512;
  int hop_length = 160;
  WindowType window = WindowType::kHann;
};

// One analysis frame. `power` is the mean squared amplitude of the raw
// (unwindowed) samples.
struct Frame {
  int index = 0;
  ArrayXd samples;
  double power = 0.0;
};

enum class VoicingLabel { kSilent, kUnvoiced, kVoiced };

struct VoicingTrack {
  std::vector<VoicingLabel> labels;
  std::vector<double> scores;  // linear discriminant score per frame

  std::size_t size() const { return labels.size(); }
};

// Harmonic synthesis recipe. The contour holds one target F0 per analysis
// frame; the waveform interpolates between frame centers.
struct SynthSpec {
  ArrayXd f0_contour;  // Hz, one entry per frame
  int num_harmonics = 1;
  double harmonic_rolloff_db = 0.0;  // attenuation per harmonic step
  double duration_s = 0.0;
};

struct PitchFrame {
  bool voiced = false;
  double f0_hz = 0.0;     // valid only when voiced
  double lag_fused = 0.0; // fused pitch period in samples
  // Diagnostics from the two filter passes.
  double lag_forward = 0.0;
  double lag_backward = 0.0;
  double var_forward = 0.0;
  double var_backward = 0.0;
  int lag_observed = 0;
};

struct PitchTrack {
  std::vector<PitchFrame> frames;
  int sample_rate = 0;
  int hop_length = 0;

  std::size_t size() const { return frames.size(); }
  double frame_time_s(int k) const {
    return static_cast<double>(k) * hop_length / sample_rate;
  }
};

class DegenerateClassification : public std::runtime_error {
 public:
  DegenerateClassification(const std::string& what, int empty_class)
      : std::runtime_error(what), empty_class_(empty_class) {}

  // Which k-means class had no members: 0 = unvoiced pole, 1 = voiced pole.
  int empty_class() const { return empty_class_; }

 private:
  int empty_class_;
};

}  // namespace pitchtrack
