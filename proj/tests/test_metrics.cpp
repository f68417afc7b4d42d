#include <algorithm>
#include <numeric>
#include <random>

#include <doctest.h>

#include "pitchtrack/metrics.hpp"

using namespace pitchtrack;

namespace {

PitchTrack make_track(const std::vector<double>& f0) {
  PitchTrack t;
  t.sample_rate = 16000;
  t.hop_length = 160;
  for (double f : f0) {
    PitchFrame pf;
    pf.voiced = f > 0.0;
    pf.f0_hz = f > 0.0 ? f : 0.0;
    t.frames.push_back(pf);
  }
  return t;
}

}  // namespace

TEST_CASE("gpe_indicator: strict 10% threshold") {
  CHECK(gpe_indicator(100.0, 111.0) == 1);
  CHECK(gpe_indicator(100.0, 110.0) == 0);  // exactly 10% is fine
  CHECK(gpe_indicator(200.0, 200.0) == 0);
  CHECK_THROWS(gpe_indicator(0.0, 100.0));
}

TEST_CASE("score: identical tracks") {
  const PitchTrack t = make_track({100, 100, 0, 120, 120});
  const EvalReport r = score(t, t);
  CHECK(r.valid);
  CHECK(r.gpe_ratio == 0.0);
  CHECK(r.mfpe == 0.0);
  CHECK(r.frames_scored == 4);
  CHECK(r.voicing_confusion[1][1] == 4);
  CHECK(r.voicing_confusion[0][0] == 1);
}

TEST_CASE("score: one gross error in ten frames gives GPE 0.1") {
  std::vector<double> ref(10, 100.0), est(10, 100.0);
  est[7] = 150.0;
  const EvalReport r = score(make_track(ref), make_track(est));
  CHECK(r.gpe_ratio == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.mfpe == 0.0);
  CHECK(r.frames_fine == 9);
}

TEST_CASE("score: constant 3% offset gives MFPE 0.03") {
  const EvalReport r = score(make_track(std::vector<double>(10, 100.0)),
                             make_track(std::vector<double>(10, 103.0)));
  CHECK(r.gpe_ratio == 0.0);
  CHECK(r.mfpe == doctest::Approx(0.03).epsilon(1e-12));
}

TEST_CASE("score: mismatched frame counts throw") {
  CHECK_THROWS(score(make_track({100, 100}), make_track({100})));
}

TEST_CASE("score: no both-voiced frame marks the report invalid") {
  const EvalReport r =
      score(make_track({100, 100, 0}), make_track({0, 0, 100}));
  CHECK_FALSE(r.valid);
  CHECK(r.frames_scored == 0);
  CHECK(r.voicing_confusion[1][0] == 2);
  CHECK(r.voicing_confusion[0][1] == 1);
}

TEST_CASE("metrics are scale invariant") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(80.0, 400.0);
  std::vector<double> ref(50), est(50);
  for (int k = 0; k < 50; ++k) {
    ref[k] = u(rng);
    est[k] = ref[k] * (1.0 + 0.002 * (k % 40 == 0 ? 70.0 : k % 9));
  }
  const EvalReport a = score(make_track(ref), make_track(est));
  for (auto& f : ref) f *= 2.5;
  for (auto& f : est) f *= 2.5;
  const EvalReport b = score(make_track(ref), make_track(est));
  CHECK(a.gpe_ratio == doctest::Approx(b.gpe_ratio).epsilon(1e-12));
  CHECK(a.mfpe == doctest::Approx(b.mfpe).epsilon(1e-12));
}

TEST_CASE("MFPE never exceeds the gross-error threshold") {
  std::mt19937 rng(73);
  std::uniform_real_distribution<double> u(80.0, 400.0);
  std::uniform_real_distribution<double> noise(-0.5, 0.5);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> ref(40), est(40);
    for (int k = 0; k < 40; ++k) {
      ref[k] = u(rng);
      est[k] = ref[k] * (1.0 + noise(rng));
    }
    const EvalReport r = score(make_track(ref), make_track(est));
    CHECK(r.mfpe <= 0.1 + 1e-12);
  }
}

TEST_CASE("score is invariant to a paired frame permutation") {
  std::mt19937 rng(79);
  std::uniform_real_distribution<double> u(80.0, 400.0);
  std::vector<double> ref(30), est(30);
  for (int k = 0; k < 30; ++k) {
    ref[k] = u(rng);
    est[k] = u(rng);
  }
  const EvalReport a = score(make_track(ref), make_track(est));
  std::vector<int> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> ref2(30), est2(30);
  for (int k = 0; k < 30; ++k) {
    ref2[k] = ref[perm[k]];
    est2[k] = est[perm[k]];
  }
  const EvalReport b = score(make_track(ref2), make_track(est2));
  CHECK(a.gpe_ratio == doctest::Approx(b.gpe_ratio).epsilon(1e-12));
  CHECK(a.mfpe == doctest::Approx(b.mfpe).epsilon(1e-12));
}
