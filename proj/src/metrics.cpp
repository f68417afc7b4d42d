#include "pitchtrack/metrics.hpp"

#include <cmath>

namespace pitchtrack {

int gpe_indicator(double f0_ref, double f0_est) {
  if (!(f0_ref > 0.0)) throw std::invalid_argument("reference F0 must be > 0");
  return std::abs(f0_ref - f0_est) / f0_ref > 0.1 ? 1 : 0;
}

EvalReport score(const PitchTrack& ref, const PitchTrack& est) {
  if (ref.size() != est.size()) {
    throw std::invalid_argument("frame counts differ");
  }
  EvalReport report;
  double fine_error_sum = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    const bool rv = ref.frames[k].voiced;
    const bool ev = est.frames[k].voiced;
    ++report.voicing_confusion[rv ? 1 : 0][ev ? 1 : 0];
    if (!rv || !ev) continue;
    ++report.frames_scored;
    if (gpe_indicator(ref.frames[k].f0_hz, est.frames[k].f0_hz) == 0) {
      ++report.frames_fine;
      fine_error_sum += std::abs(ref.frames[k].f0_hz - est.frames[k].f0_hz) /
                        ref.frames[k].f0_hz;
    }
  }
  if (report.frames_scored > 0) {
    report.valid = true;
    report.gpe_ratio =
        1.0 - static_cast<double>(report.frames_fine) / report.frames_scored;
    report.mfpe =
        report.frames_fine > 0 ? fine_error_sum / report.frames_fine : 0.0;
  }
  return report;
}

}  // namespace pitchtrack
