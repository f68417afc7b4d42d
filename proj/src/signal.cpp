#include "pitchtrack/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace pitchtrack {

int num_frames(Eigen::Index num_samples, const FramingConfig& cfg) {
  if (num_samples < cfg.frame_length) return 0;
  return static_cast<int>((num_samples - cfg.frame_length) / cfg.hop_length) +
         1;
}

std::vector<Frame> frame_signal(const AudioBuffer& buf,
                                const FramingConfig& cfg) {
  if (cfg.hop_length <= 0 || cfg.hop_length > cfg.frame_length) {
    throw std::invalid_argument("invalid framing: hop must be in (0, frame]");
  }
  const int count = num_frames(buf.samples.size(), cfg);
  if (count == 0) {
    throw std::runtime_error("buffer shorter than one frame");
  }
  std::vector<Frame> frames;
  frames.reserve(count);
  for (int k = 0; k < count; ++k) {
    Frame f;
    f.index = k;
    f.samples = buf.samples.segment(
        static_cast<Eigen::Index>(k) * cfg.hop_length, cfg.frame_length);
    f.power = f.samples.square().mean();
    frames.push_back(std::move(f));
  }
  return frames;
}

SynthSpec make_synth_spec(double f0_hz, double duration_s, int num_harmonics,
                          double harmonic_rolloff_db, double vibrato_depth_hz,
                          double vibrato_rate_hz, int sample_rate,
                          const FramingConfig& framing) {
  if (f0_hz <= 0.0) throw std::invalid_argument("f0 must be positive");
  if (num_harmonics < 1) throw std::invalid_argument("need >= 1 harmonic");
  const Eigen::Index n = static_cast<Eigen::Index>(
      std::llround(duration_s * sample_rate));
  const int frames = num_frames(n, framing);
  if (frames == 0) throw std::invalid_argument("duration shorter than one frame");

  SynthSpec spec;
  spec.num_harmonics = num_harmonics;
  spec.harmonic_rolloff_db = harmonic_rolloff_db;
  spec.duration_s = duration_s;
  spec.f0_contour.resize(frames);
  for (int k = 0; k < frames; ++k) {
    const double t_center =
        (k * framing.hop_length + 0.5 * framing.frame_length) / sample_rate;
    spec.f0_contour[k] =
        f0_hz + vibrato_depth_hz *
                    std::sin(2.0 * std::numbers::pi * vibrato_rate_hz *
                             t_center);
  }
  const double f_top = spec.f0_contour.maxCoeff() * num_harmonics;
  if (f_top >= 0.5 * sample_rate) {
    throw std::invalid_argument("harmonic above Nyquist");
  }
  if (spec.f0_contour.minCoeff() <= 0.0) {
    throw std::invalid_argument("contour dips to non-positive F0");
  }
  return spec;
}

namespace {

// Piecewise-linear interpolation of the contour (knots at frame centers,
// constant extrapolation at the ends).
double contour_at(const ArrayXd& contour, const FramingConfig& framing,
                  int sample_rate, Eigen::Index n) {
  const double center0 = 0.5 * framing.frame_length;
  const double pos = (static_cast<double>(n) - center0) / framing.hop_length;
  if (pos <= 0.0) return contour[0];
  const Eigen::Index last = contour.size() - 1;
  if (pos >= static_cast<double>(last)) return contour[last];
  const Eigen::Index k = static_cast<Eigen::Index>(pos);
  const double frac = pos - static_cast<double>(k);
  return contour[k] * (1.0 - frac) + contour[k + 1] * frac;
}

}  // namespace

std::pair<AudioBuffer, PitchTrack> synthesize(const SynthSpec& spec,
                                              int sample_rate,
                                              const FramingConfig& framing) {
  const double f_top = spec.f0_contour.maxCoeff() * spec.num_harmonics;
  if (f_top >= 0.5 * sample_rate) {
    throw std::invalid_argument("harmonic above Nyquist");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(
      std::llround(spec.duration_s * sample_rate));

  std::vector<double> amp(spec.num_harmonics);
  double amp_sum = 0.0;
  for (int h = 0; h < spec.num_harmonics; ++h) {
    amp[h] = std::pow(10.0, -spec.harmonic_rolloff_db * h / 20.0);
    amp_sum += amp[h];
  }
  const double scale = 0.95 / amp_sum;

  AudioBuffer buf;
  buf.sample_rate = sample_rate;
  buf.samples.resize(n);
  double phase = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f0 = contour_at(spec.f0_contour, framing, sample_rate, i);
    double s = 0.0;
    for (int h = 0; h < spec.num_harmonics; ++h) {
      s += amp[h] * std::sin((h + 1) * phase);
    }
    buf.samples[i] = scale * s;
    phase += 2.0 * std::numbers::pi * f0 / sample_rate;
    if (phase > 2.0 * std::numbers::pi) phase -= 2.0 * std::numbers::pi;
  }

  PitchTrack ref;
  ref.sample_rate = sample_rate;
  ref.hop_length = framing.hop_length;
  ref.frames.resize(spec.f0_contour.size());
  for (Eigen::Index k = 0; k < spec.f0_contour.size(); ++k) {
    ref.frames[k].voiced = true;
    ref.frames[k].f0_hz = spec.f0_contour[k];
    ref.frames[k].lag_fused = sample_rate / spec.f0_contour[k];
  }
  return {std::move(buf), std::move(ref)};
}

MixResult mix_at_snr(const AudioBuffer& clean, const AudioBuffer& noise,
                     double snr_db, uint64_t seed) {
  if (clean.sample_rate != noise.sample_rate) {
    throw std::invalid_argument("sample rates differ");
  }
  if (std::abs(snr_db) > 60.0) {
    throw std::invalid_argument("snr_db outside [-60, 60]");
  }
  const Eigen::Index n = clean.samples.size();
  ArrayXd noise_track(n);
  if (noise.samples.size() >= n) {
    noise_track = noise.samples.head(n);
  } else {
    // Loop shorter noise with a random circular offset.
    std::mt19937_64 rng(seed);
    const Eigen::Index len = noise.samples.size();
    std::uniform_int_distribution<Eigen::Index> offset_dist(0, len - 1);
    Eigen::Index off = offset_dist(rng);
    for (Eigen::Index i = 0; i < n; ++i) {
      noise_track[i] = noise.samples[(i + off) % len];
    }
  }

  const double p_clean = clean.samples.square().mean();
  const double p_noise = noise_track.square().mean();
  if (p_clean <= 0.0 || p_noise <= 0.0) {
    throw std::invalid_argument("zero-power signal");
  }
  const double gain = std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));

  MixResult out;
  out.noise_gain = gain;
  out.mixed.sample_rate = clean.sample_rate;
  out.mixed.samples = clean.samples + gain * noise_track;
  return out;
}

AudioBuffer white_noise(Eigen::Index num_samples, int sample_rate,
                        uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  AudioBuffer buf;
  buf.sample_rate = sample_rate;
  buf.samples.resize(num_samples);
  for (Eigen::Index i = 0; i < num_samples; ++i) buf.samples[i] = dist(rng);
  const double rms = std::sqrt(buf.samples.square().mean());
  buf.samples /= rms;
  return buf;
}

}  // namespace pitchtrack
