#include "pitchtrack/pipeline.hpp"

#include <optional>

#include "pitchtrack/acf.hpp"
#include "pitchtrack/kalman.hpp"
#include "pitchtrack/signal.hpp"
#include "pitchtrack/voicing.hpp"

namespace pitchtrack {

TrackResult run_pipeline(const AudioBuffer& buf, const PipelineConfig& cfg) {
  FramingConfig framing{cfg.frame_length, cfg.hop_length, cfg.window};
  const std::vector<Frame> frames = frame_signal(buf, framing);
  const LagBounds bounds =
      make_lag_bounds(buf.sample_rate, cfg.f_min, cfg.f_max, cfg.frame_length);

  const std::vector<bool> silent = power_gate(frames, cfg.silence_ratio);

  FeatureConfig feat_cfg;
  feat_cfg.preemph_coeff = cfg.preemph_coeff;
  feat_cfg.lowband_cutoff_hz = cfg.lowband_cutoff_hz;
  feat_cfg.lag_low = bounds.n_low;
  feat_cfg.lag_high = bounds.n_high;
  feat_cfg.sample_rate = buf.sample_rate;

  std::vector<FeatureVector> features;
  features.reserve(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    features.push_back(extract_features(frames[k], silent[k], feat_cfg));
  }

  VoicingTrack voicing;
  try {
    const ClusterModel model = kmeans_two_class(features);
    voicing = classify(features, lda_weight(model));

    // Single-class sentence: the per-sentence discriminant can only separate
    // classes that are both present. If every non-silent frame came out with
    // the same label, fall back to whichever pole the cloud center is
    // nearer: all-voiced audio drifts negative under heavy noise, while
    // noise-only audio genuinely sits by the unvoiced pole.
    int n_voiced = 0, n_unvoiced = 0;
    FeatureVec center = FeatureVec::Zero();
    for (std::size_t k = 0; k < frames.size(); ++k) {
      if (voicing.labels[k] == VoicingLabel::kSilent) continue;
      n_voiced += voicing.labels[k] == VoicingLabel::kVoiced;
      n_unvoiced += voicing.labels[k] == VoicingLabel::kUnvoiced;
      center += features[k].v;
    }
    const int n_active = n_voiced + n_unvoiced;
    if (n_active > 0 && (n_voiced == 0 || n_unvoiced == 0)) {
      center /= n_active;
      const bool voiced_pole =
          (center - FeatureVec::Constant(1.0)).squaredNorm() <
          (center - FeatureVec::Constant(-1.0)).squaredNorm();
      for (std::size_t k = 0; k < frames.size(); ++k) {
        if (voicing.labels[k] == VoicingLabel::kSilent) continue;
        voicing.labels[k] =
            voiced_pole ? VoicingLabel::kVoiced : VoicingLabel::kUnvoiced;
      }
    }
  } catch (const DegenerateClassification& e) {
    // A fully voiced utterance collapses onto the +1 pole; fall back to
    // labeling every non-silent frame voiced. An empty voiced cluster (no
    // speech at all) stays a hard error for the caller.
    if (e.empty_class() != 0) throw;
    voicing.labels.resize(frames.size());
    voicing.scores.assign(frames.size(), 0.0);
    for (std::size_t k = 0; k < frames.size(); ++k) {
      voicing.labels[k] =
          silent[k] ? VoicingLabel::kSilent : VoicingLabel::kVoiced;
    }
  }

  // Pass 1 before estimation so recovered frames also get observations.
  fill_single_unvoiced(voicing);

  std::vector<std::optional<PitchObservation>> observations(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    if (voicing.labels[k] != VoicingLabel::kVoiced) continue;
    const ArrayXd r_t = time_acf(frames[k], bounds);
    const ArrayXd r_s = spectral_acf(frames[k], bounds, cfg.fft_size);
    observations[k] =
        spte_acf(r_t, r_s, cfg.alpha_r, bounds, static_cast<int>(k));
  }

  reject_boundary_lags(voicing, observations, bounds);
  remove_single_voiced(voicing);

  TrackResult result;
  result.track.sample_rate = buf.sample_rate;
  result.track.hop_length = cfg.hop_length;
  result.track.frames.resize(frames.size());

  // Filter over the concatenated voiced frames only.
  std::vector<std::size_t> voiced_idx;
  std::vector<double> obs_seq;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    if (voicing.labels[k] == VoicingLabel::kVoiced && observations[k]) {
      voiced_idx.push_back(k);
      obs_seq.push_back(static_cast<double>(observations[k]->lag));
    }
  }

  if (!obs_seq.empty()) {
    KalmanConfig kcfg;
    kcfg.sigma2_delta0 = cfg.sigma2_delta0;
    kcfg.l_window = cfg.l_window;
    kcfg.alpha = cfg.alpha;
    kcfg.p0_init = 10.0 * cfg.sigma2_delta0;

    const FilterOutput fwd = run_forward(obs_seq, kcfg);
    const FilterOutput bwd = run_backward(obs_seq, kcfg);
    for (std::size_t i = 0; i < voiced_idx.size(); ++i) {
      PitchFrame& pf = result.track.frames[voiced_idx[i]];
      pf.voiced = true;
      pf.lag_observed = static_cast<int>(obs_seq[i]);
      pf.lag_forward = fwd.estimates[i];
      pf.var_forward = fwd.variances[i];
      pf.lag_backward = bwd.estimates[i];
      pf.var_backward = bwd.variances[i];
      pf.lag_fused = fuse(fwd.estimates[i], fwd.variances[i],
                          bwd.estimates[i], bwd.variances[i]);
      pf.f0_hz =
          to_frequency(pf.lag_fused, buf.sample_rate, cfg.f_min, cfg.f_max);
    }
  }

  result.voicing = std::move(voicing);
  return result;
}

}  // namespace pitchtrack
