#include "pitchtrack/config.hpp"

#include <fstream>
#include <sstream>

namespace pitchtrack {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

WindowType parse_window(const std::string& v) {
  if (v == "rectangular") return WindowType::kRectangular;
  if (v == "hann") return WindowType::kHann;
  if (v == "hamming") return WindowType::kHamming;
  throw std::runtime_error("unknown window type: " + v);
}

}  // namespace

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    try {
      if (key == "framing.frame_length") cfg.frame_length = std::stoi(value);
      else if (key == "framing.hop_length") cfg.hop_length = std::stoi(value);
      else if (key == "framing.window") cfg.window = parse_window(value);
      else if (key == "voicing.silence_ratio") cfg.silence_ratio = std::stod(value);
      else if (key == "voicing.preemph_coeff") cfg.preemph_coeff = std::stod(value);
      else if (key == "voicing.lowband_cutoff_hz") cfg.lowband_cutoff_hz = std::stod(value);
      else if (key == "acf.alpha_r") cfg.alpha_r = std::stod(value);
      else if (key == "acf.fft_size") cfg.fft_size = std::stoi(value);
      else if (key == "acf.f_min") cfg.f_min = std::stod(value);
      else if (key == "acf.f_max") cfg.f_max = std::stod(value);
      else if (key == "kalman.l_window") cfg.l_window = std::stoi(value);
      else if (key == "kalman.alpha") cfg.alpha = std::stod(value);
      else if (key == "kalman.sigma2_delta0") cfg.sigma2_delta0 = std::stod(value);
      else if (key == "output.format") cfg.output_format = value;
      else throw std::runtime_error("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": bad value for " + key);
    }
  }
  if (cfg.f_min >= cfg.f_max) {
    throw std::runtime_error("config: f_min must be below f_max");
  }
  if (cfg.output_format != "csv" && cfg.output_format != "json") {
    throw std::runtime_error("config: output format must be csv or json");
  }
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pitchtrack
