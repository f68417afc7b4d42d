#pragma once

#include <string>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

// Full parameter set for the tracking pipeline. Defaults follow the
// published operating point: alpha_r = 0.5, F in [60, 460] Hz, L = 8,
// alpha = 0.95, sigma2_delta0 = 0.06, silence ratio 0.3.
struct PipelineConfig {
  // [framing]
  int frame_length = 512;
  int hop_length = 160;
  WindowType window = WindowType::kHann;
  // [voicing]
  double silence_ratio = 0.3;
  double preemph_coeff = 0.97;
  double lowband_cutoff_hz = 1000.0;
  // [acf]
  double alpha_r = 0.5;
  int fft_size = 2048;
  double f_min = 60.0;
  double f_max = 460.0;
  // [kalman]
  int l_window = 8;
  double alpha = 0.95;
  double sigma2_delta0 = 0.06;
  // [output]
  std::string output_format = "csv";
};

// Parses an INI-style config file ([section] with key = value lines, '#'
// comments) and overlays it on the defaults. Unknown keys are an error.
PipelineConfig load_config(const std::string& path);

PipelineConfig parse_config(const std::string& text);

}  // namespace pitchtrack
