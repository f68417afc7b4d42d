// Command-line front end: track, synth, mix, eval.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pitchtrack/config.hpp"
#include "pitchtrack/metrics.hpp"
#include "pitchtrack/pipeline.hpp"
#include "pitchtrack/signal.hpp"
#include "pitchtrack/track_io.hpp"
#include "pitchtrack/wav.hpp"

namespace pt = pitchtrack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;

struct TrackArgs {
  std::string input, output, config_path;
  bool debug = false;
  // CLI overrides; unset flags leave the config value alone.
  std::optional<double> alpha_r, f_min, f_max, alpha, sigma2_delta0,
      silence_ratio;
  std::optional<int> l_window;
  std::optional<std::string> format;
};

pt::PipelineConfig resolve_config(const TrackArgs& a) {
  pt::PipelineConfig cfg = a.config_path.empty()
                               ? pt::PipelineConfig{}
                               : pt::load_config(a.config_path);
  if (a.alpha_r) cfg.alpha_r = *a.alpha_r;
  if (a.f_min) cfg.f_min = *a.f_min;
  if (a.f_max) cfg.f_max = *a.f_max;
  if (a.l_window) cfg.l_window = *a.l_window;
  if (a.alpha) cfg.alpha = *a.alpha;
  if (a.sigma2_delta0) cfg.sigma2_delta0 = *a.sigma2_delta0;
  if (a.silence_ratio) cfg.silence_ratio = *a.silence_ratio;
  if (a.format) cfg.output_format = *a.format;
  return cfg;
}

int run_track(const TrackArgs& args) {
  const pt::PipelineConfig cfg = resolve_config(args);
  const pt::AudioBuffer buf = pt::load_audio(args.input);
  if (buf.duration_s() < 1.0) {
    std::cerr << "warning: input shorter than 1 s (" << buf.duration_s()
              << " s); classification may be unreliable\n";
  }
  pt::TrackResult result;
  try {
    result = pt::run_pipeline(buf, cfg);
  } catch (const pt::DegenerateClassification& e) {
    std::cerr << "error: degenerate voicing classification (" << e.what()
              << ")\n";
    return kExitDegenerate;
  }
  const std::string content =
      cfg.output_format == "json"
          ? pt::track_to_json(result.track)
          : pt::track_to_csv(result.track, result.voicing.scores, args.debug);
  pt::write_track(args.output, content);
  return kExitOk;
}

int run_synth(double f0, double duration, int harmonics, double rolloff,
              double vibrato_depth, double vibrato_rate, int sample_rate,
              const std::string& out_wav, const std::string& out_ref) {
  pt::FramingConfig framing;
  const pt::SynthSpec spec =
      pt::make_synth_spec(f0, duration, harmonics, rolloff, vibrato_depth,
                          vibrato_rate, sample_rate, framing);
  auto [buf, ref] = pt::synthesize(spec, sample_rate, framing);
  pt::save_audio(out_wav, buf);
  if (!out_ref.empty()) {
    pt::write_track(out_ref, pt::track_to_csv(ref));
  }
  return kExitOk;
}

int run_mix(const std::string& clean_path, const std::string& noise_path,
            double snr_db, uint64_t seed, bool verify,
            const std::string& out_path) {
  const pt::AudioBuffer clean = pt::load_audio(clean_path);
  const pt::AudioBuffer noise = pt::load_audio(noise_path);
  const pt::MixResult mixed = pt::mix_at_snr(clean, noise, snr_db, seed);
  pt::save_audio(out_path, mixed.mixed);
  if (verify) {
    const pt::ArrayXd scaled = mixed.mixed.samples - clean.samples;
    const double ratio =
        clean.samples.square().mean() / scaled.square().mean();
    std::cout << "snr_realized_db " << 10.0 * std::log10(ratio) << "\n";
  }
  return kExitOk;
}

int run_eval(const std::string& ref_path, const std::string& est_path) {
  const pt::PitchTrack ref = pt::read_track_csv(ref_path);
  const pt::PitchTrack est = pt::read_track_csv(est_path);
  const pt::EvalReport r = pt::score(ref, est);
  nlohmann::json doc = {
      {"frames_scored", r.frames_scored},
      {"frames_fine", r.frames_fine},
      {"voicing_confusion",
       {{"ref_unvoiced", {r.voicing_confusion[0][0], r.voicing_confusion[0][1]}},
        {"ref_voiced", {r.voicing_confusion[1][0], r.voicing_confusion[1][1]}}}},
  };
  if (r.valid) {
    doc["gpe_ratio"] = r.gpe_ratio;
    doc["mfpe"] = r.mfpe;
  } else {
    doc["gpe_ratio"] = nullptr;
    doc["mfpe"] = nullptr;
    std::cerr << "warning: no frame voiced in both tracks; metrics undefined\n";
  }
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pitch tracking via spectro-temporal ACF with forward-backward "
               "Kalman smoothing"};
  app.require_subcommand(1);

  TrackArgs targs;
  CLI::App* track = app.add_subcommand("track", "Extract a pitch track from a WAV file");
  track->add_option("input", targs.input, "Input WAV")->required();
  track->add_option("-o,--output", targs.output, "Output track file")->required();
  track->add_option("-c,--config", targs.config_path, "Config file (INI)");
  track->add_flag("--debug", targs.debug, "Append diagnostic columns");
  track->add_option("--alpha-r", targs.alpha_r, "Time/spectral ACF blend");
  track->add_option("--f-min", targs.f_min, "Minimum F0 (Hz)");
  track->add_option("--f-max", targs.f_max, "Maximum F0 (Hz)");
  track->add_option("--l-window", targs.l_window, "Variance window (frames)");
  track->add_option("--alpha", targs.alpha, "Observation-mean smoothing");
  track->add_option("--sigma2-delta0", targs.sigma2_delta0, "System-noise variance");
  track->add_option("--silence-ratio", targs.silence_ratio, "Power-gate ratio");
  track->add_option("--format", targs.format, "csv or json");

  double f0 = 200.0, duration = 2.0, rolloff = 6.0, vib_depth = 0.0,
         vib_rate = 5.0;
  int harmonics = 5, sample_rate = 16000;
  std::string synth_wav, synth_ref;
  CLI::App* synth = app.add_subcommand("synth", "Synthesize a harmonic test signal");
  synth->add_option("--f0", f0, "Fundamental (Hz)");
  synth->add_option("--duration", duration, "Seconds");
  synth->add_option("--harmonics", harmonics, "Number of harmonics");
  synth->add_option("--rolloff", rolloff, "dB per harmonic step");
  synth->add_option("--vibrato-depth", vib_depth, "Hz");
  synth->add_option("--vibrato-rate", vib_rate, "Hz");
  synth->add_option("--sample-rate", sample_rate, "Hz");
  synth->add_option("-o,--output", synth_wav, "Output WAV")->required();
  synth->add_option("--ref", synth_ref, "Reference track CSV");

  std::string mix_clean, mix_noise, mix_out;
  double snr_db = 0.0;
  uint64_t seed = 0;
  bool verify = false;
  CLI::App* mix = app.add_subcommand("mix", "Add noise at a target SNR");
  mix->add_option("clean", mix_clean, "Clean WAV")->required();
  mix->add_option("noise", mix_noise, "Noise WAV")->required();
  mix->add_option("--snr", snr_db, "Target SNR (dB)")->required();
  mix->add_option("--seed", seed, "RNG seed for noise looping");
  mix->add_flag("--verify", verify, "Recompute and print the realized SNR");
  mix->add_option("-o,--output", mix_out, "Output WAV")->required();

  std::string eval_ref, eval_est;
  CLI::App* eval = app.add_subcommand("eval", "Score an estimated track against a reference");
  eval->add_option("--ref", eval_ref, "Reference track CSV")->required();
  eval->add_option("--est", eval_est, "Estimated track CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (track->parsed()) return run_track(targs);
    if (synth->parsed())
      return run_synth(f0, duration, harmonics, rolloff, vib_depth, vib_rate,
                       sample_rate, synth_wav, synth_ref);
    if (mix->parsed())
      return run_mix(mix_clean, mix_noise, snr_db, seed, verify, mix_out);
    if (eval->parsed()) return run_eval(eval_ref, eval_est);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
