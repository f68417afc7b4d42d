#include "pitchtrack/track_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pitchtrack {

std::string track_to_csv(const PitchTrack& track,
                         const std::vector<double>& scores, bool debug) {
  std::string out = "frame,time_s,voiced,f0_hz";
  if (debug) out += ",score,lag_obs,lag_fwd,var_fwd,lag_bwd,var_bwd";
  out += "\n";
  char buf[256];
  for (std::size_t k = 0; k < track.size(); ++k) {
    const PitchFrame& f = track.frames[k];
    if (f.voiced) {
      std::snprintf(buf, sizeof(buf), "%zu,%.6f,1,%.6f", k,
                    track.frame_time_s(static_cast<int>(k)), f.f0_hz);
    } else {
      std::snprintf(buf, sizeof(buf), "%zu,%.6f,0,", k,
                    track.frame_time_s(static_cast<int>(k)));
    }
    out += buf;
    if (debug) {
      const double score = k < scores.size() ? scores[k] : 0.0;
      std::snprintf(buf, sizeof(buf), ",%.6f,%d,%.6f,%.6f,%.6f,%.6f", score,
                    f.lag_observed, f.lag_forward, f.var_forward,
                    f.lag_backward, f.var_backward);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string track_to_json(const PitchTrack& track) {
  nlohmann::json frames = nlohmann::json::array();
  for (std::size_t k = 0; k < track.size(); ++k) {
    const PitchFrame& f = track.frames[k];
    nlohmann::json row = {
        {"frame", k},
        {"time_s", track.frame_time_s(static_cast<int>(k))},
        {"voiced", f.voiced ? 1 : 0},
    };
    if (f.voiced) row["f0_hz"] = f.f0_hz;
    frames.push_back(std::move(row));
  }
  nlohmann::json doc = {{"sample_rate", track.sample_rate},
                        {"hop_length", track.hop_length},
                        {"frames", std::move(frames)}};
  return doc.dump(2) + "\n";
}

void write_track(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write: " + path);
  os << content;
  if (!os) throw std::runtime_error("write failed: " + path);
}

PitchTrack read_track_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open track CSV: " + path);
  PitchTrack track;
  std::string line;
  if (!std::getline(in, line) || line.rfind("frame,time_s,voiced,f0_hz", 0) != 0) {
    throw std::runtime_error("bad track CSV header: " + path);
  }
  double prev_time = 0.0, hop_time = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string frame_s, time_s, voiced_s, f0_s;
    std::getline(ss, frame_s, ',');
    std::getline(ss, time_s, ',');
    std::getline(ss, voiced_s, ',');
    std::getline(ss, f0_s, ',');
    PitchFrame f;
    f.voiced = voiced_s == "1";
    if (f.voiced) {
      if (f0_s.empty()) throw std::runtime_error("voiced row without f0: " + line);
      f.f0_hz = std::stod(f0_s);
    }
    if (track.frames.size() == 1) hop_time = std::stod(time_s) - prev_time;
    if (track.frames.empty()) prev_time = std::stod(time_s);
    track.frames.push_back(f);
  }
  // Best-effort timing recovery for diagnostics; eval only needs voiced/f0.
  track.sample_rate = 16000;
  track.hop_length = static_cast<int>(hop_time * 16000.0 + 0.5);
  return track;
}

}  // namespace pitchtrack
