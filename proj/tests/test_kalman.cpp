#include <cmath>
#include <random>

#include <doctest.h>

#include "pitchtrack/kalman.hpp"

using namespace pitchtrack;

namespace {

// Literal re-transcription of the recursive mean and windowed ML variance
// (oracle, kept independent of the library path).
struct ScratchStats {
  std::vector<double> means;
  std::vector<double> variances;
};

ScratchStats scratch_stats(const std::vector<double>& obs, double alpha,
                           int window) {
  ScratchStats out;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    double mu;
    if (k == 0) {
      mu = obs[0];
    } else {
      mu = alpha * obs[k] + (1.0 - alpha) * out.means.back();
    }
    out.means.push_back(mu);
    double acc = 0.0;
    int count = 0;
    for (int i = static_cast<int>(k);
         i > static_cast<int>(k) - window && i >= 0; --i) {
      const double r = obs[i] - out.means[i];
      acc += r * r;
      ++count;
    }
    out.variances.push_back(acc / count);
  }
  return out;
}

ObservationStats feed(const std::vector<double>& obs,
                      const KalmanConfig& cfg) {
  ObservationStats s;
  for (double x : obs) s = update_observation_stats(s, x, cfg);
  return s;
}

}  // namespace

TEST_CASE("observation mean: alpha = 0.95 recursion") {
  KalmanConfig cfg;
  ObservationStats s;
  s.mean = 100.0;
  s.count = 1;
  s = update_observation_stats(s, 120.0, cfg);
  CHECK(s.mean == doctest::Approx(119.0).epsilon(1e-12));
}

TEST_CASE("observation variance: constant input from cold start is zero") {
  KalmanConfig cfg;
  const ObservationStats s = feed(std::vector<double>(10, 80.0), cfg);
  CHECK(s.mean == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(s.variance == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("observation stats track the scratch transcription") {
  KalmanConfig cfg;
  const std::vector<double> obs = {80, 80, 80, 80, 120, 120, 120, 120};
  const ScratchStats oracle = scratch_stats(obs, cfg.alpha, cfg.l_window);
  ObservationStats s;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    s = update_observation_stats(s, obs[k], cfg);
    CHECK(s.mean == doctest::Approx(oracle.means[k]).epsilon(1e-12));
    CHECK(s.variance == doctest::Approx(oracle.variances[k]).epsilon(1e-12));
  }
}

TEST_CASE("observation stats: randomized transcription check") {
  KalmanConfig cfg;
  cfg.l_window = 5;
  cfg.alpha = 0.9;
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> u(34.0, 267.0);
  std::vector<double> obs;
  ObservationStats s;
  for (int k = 0; k < 200; ++k) {
    obs.push_back(u(rng));
    s = update_observation_stats(s, obs.back(), cfg);
    const ScratchStats oracle = scratch_stats(obs, cfg.alpha, cfg.l_window);
    CHECK(s.mean == doctest::Approx(oracle.means.back()).epsilon(1e-12));
    CHECK(s.variance ==
          doctest::Approx(oracle.variances.back()).epsilon(1e-12));
  }
}

TEST_CASE("kf_step: equal variances give gain 1/2") {
  KalmanConfig cfg;
  cfg.sigma2_delta0 = 0.0;  // isolate the correction arithmetic
  KalmanState s{80.0, 1.0, 0.0};
  const KalmanState next = kf_step(s, 100.0, 1.0, cfg);
  CHECK(next.gain == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(next.estimate == doctest::Approx(90.0).epsilon(1e-12));
  CHECK(next.error_var == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("kf_step: huge observation variance freezes the estimate") {
  KalmanConfig cfg;
  KalmanState s{80.0, 1.0, 0.0};
  const KalmanState next = kf_step(s, 250.0, 1e12, cfg);
  CHECK(next.gain < 2e-12);
  CHECK(next.estimate == doctest::Approx(80.0).epsilon(1e-9));
}

TEST_CASE("kf_step: zero observation variance trusts the observation") {
  KalmanConfig cfg;
  KalmanState s{80.0, 1.0, 0.0};
  const KalmanState next = kf_step(s, 123.0, 0.0, cfg);
  CHECK(next.gain == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(next.estimate == doctest::Approx(123.0).epsilon(1e-12));
}

TEST_CASE("kf_step: both variances zero defines gain 1") {
  KalmanConfig cfg;
  cfg.sigma2_delta0 = 0.0;
  KalmanState s{80.0, 0.0, 0.0};
  const KalmanState next = kf_step(s, 90.0, 0.0, cfg);
  CHECK(next.gain == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(next.estimate == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("kf_step properties: convex update, variance contraction") {
  KalmanConfig cfg;
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int t = 0; t < 1000; ++t) {
    KalmanState s{u(rng), u(rng), 0.0};
    const double obs = u(rng);
    const double r = u(rng);
    const KalmanState next = kf_step(s, obs, r, cfg);
    CHECK(next.gain >= 0.0);
    CHECK(next.gain <= 1.0);
    const double predicted = s.estimate;
    const double expect = (1.0 - next.gain) * predicted + next.gain * obs;
    CHECK(next.estimate == doctest::Approx(expect).epsilon(1e-9));
    CHECK(next.error_var <= s.error_var + cfg.sigma2_delta0 + 1e-12);
  }
}

TEST_CASE("run_forward: single observation returns it") {
  const FilterOutput out = run_forward({80.0}, KalmanConfig{});
  REQUIRE(out.estimates.size() == 1);
  CHECK(out.estimates[0] == doctest::Approx(80.0).epsilon(1e-12));
}

TEST_CASE("run_forward: constant input stays put, variance hits the Riccati "
          "fixed point") {
  KalmanConfig cfg;
  const std::vector<double> obs(400, 80.0);
  const FilterOutput out = run_forward(obs, cfg);
  for (double e : out.estimates) {
    CHECK(e == doctest::Approx(80.0).epsilon(1e-12));
  }
  // Fixed point of P = r (P + q) / (P + q + r) with r = the variance floor,
  // solved by iteration (oracle).
  const double r = 1e-6, q = cfg.sigma2_delta0;
  double p = 1.0;
  for (int i = 0; i < 10000; ++i) p = r * (p + q) / (p + q + r);
  // Compare the filter's internal steady state by re-running one step.
  KalmanState s{80.0, cfg.p0_init, 0.0};
  for (int i = 0; i < 400; ++i) s = kf_step(s, 80.0, r, cfg);
  CHECK(s.error_var == doctest::Approx(p).epsilon(1e-9));
}

TEST_CASE("run_forward: monotone transition on a step input") {
  KalmanConfig cfg;
  std::vector<double> obs(20, 80.0);
  obs.insert(obs.end(), 20, 120.0);
  const FilterOutput out = run_forward(obs, cfg);
  for (std::size_t k = 20; k + 1 < out.estimates.size(); ++k) {
    CHECK(out.estimates[k + 1] >= out.estimates[k] - 1e-12);
    CHECK(out.estimates[k] >= 80.0 - 1e-12);
    CHECK(out.estimates[k] <= 120.0 + 1e-12);
  }
}

TEST_CASE("run_backward is run_forward on the reversed sequence") {
  KalmanConfig cfg;
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(34.0, 267.0);
  std::vector<double> obs(50);
  for (auto& x : obs) x = u(rng);
  const FilterOutput bwd = run_backward(obs, cfg);
  std::vector<double> rev(obs.rbegin(), obs.rend());
  const FilterOutput fwd = run_forward(rev, cfg);
  for (std::size_t k = 0; k < obs.size(); ++k) {
    CHECK(bwd.estimates[k] == fwd.estimates[obs.size() - 1 - k]);
    CHECK(bwd.variances[k] == fwd.variances[obs.size() - 1 - k]);
  }
}

TEST_CASE("forward and backward differ on an asymmetric ramp") {
  KalmanConfig cfg;
  std::vector<double> obs;
  for (int k = 0; k < 30; ++k) obs.push_back(80.0 + 3.0 * k);
  const FilterOutput fwd = run_forward(obs, cfg);
  const FilterOutput bwd = run_backward(obs, cfg);
  // On a rising ramp the forward filter lags behind (estimates low) while
  // the backward filter leads (estimates high); just check the direction
  // and that the two disagree measurably at both ends.
  CHECK(fwd.estimates.back() < bwd.estimates.back());
  CHECK(bwd.estimates.front() > fwd.estimates.front());
  CHECK(std::abs(fwd.estimates.front() - bwd.estimates.front()) > 0.5);
  CHECK(std::abs(fwd.estimates.back() - bwd.estimates.back()) > 0.5);
}

TEST_CASE("fuse: symmetry, limits, direct evaluation") {
  CHECK(fuse(80.0, 1.0, 100.0, 1.0) == doctest::Approx(90.0).epsilon(1e-12));
  CHECK(fuse(80.0, 0.0, 100.0, 3.0) == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(fuse(80.0, 1.0, 100.0, 3.0) == doctest::Approx(85.0).epsilon(1e-12));
  CHECK(fuse(80.0, 0.0, 100.0, 0.0) == doctest::Approx(90.0).epsilon(1e-12));

  std::mt19937 rng(67);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int t = 0; t < 1000; ++t) {
    const double f = 34.0 + 20.0 * u(rng), b = 34.0 + 20.0 * u(rng);
    const double vf = u(rng), vb = u(rng);
    const double fused = fuse(f, vf, b, vb);
    CHECK(fused == doctest::Approx(fuse(b, vb, f, vf)).epsilon(1e-12));
    CHECK(fused >= std::min(f, b) - 1e-12);
    CHECK(fused <= std::max(f, b) + 1e-12);
  }
}

TEST_CASE("to_frequency: division and clamping") {
  CHECK(to_frequency(80.0, 16000, 60.0, 460.0) ==
        doctest::Approx(200.0).epsilon(1e-12));
  CHECK(to_frequency(160.0, 16000, 60.0, 460.0) ==
        doctest::Approx(100.0).epsilon(1e-12));
  CHECK(to_frequency(34.0, 16000, 60.0, 460.0) ==
        doctest::Approx(460.0).epsilon(1e-12));
  CHECK_THROWS(to_frequency(0.0, 16000, 60.0, 460.0));
}

TEST_CASE("fused error beats forward-only after an F0 jump") {
  KalmanConfig cfg;
  // Two segments separated by a pause; the filter sees the concatenation.
  std::vector<double> obs(30, 80.0);
  obs.insert(obs.end(), 30, 130.0);
  const FilterOutput fwd = run_forward(obs, cfg);
  const FilterOutput bwd = run_backward(obs, cfg);
  double err_fused = 0.0, err_fwd = 0.0;
  for (std::size_t k = 30; k < 33; ++k) {
    const double fused =
        fuse(fwd.estimates[k], fwd.variances[k], bwd.estimates[k],
             bwd.variances[k]);
    err_fused += std::abs(fused - 130.0);
    err_fwd += std::abs(fwd.estimates[k] - 130.0);
  }
  CHECK(err_fused / 3.0 <= err_fwd / 3.0);
}
