#include <doctest.h>

#include <bslab/analytics.hpp>
#include <bslab/monitor.hpp>

using namespace bslab;

namespace {

CorrelatorConfig exp_config(double T_c, double theta = 1.0) {
  CorrelatorConfig cfg;
  cfg.tau_c = analytics::optimal_tau_c(1.0);
  cfg.kernel = OuterKernel::Exponential;
  cfg.T_c = T_c;
  cfg.theta = theta;
  return cfg;
}

}  // namespace

TEST_CASE("false alarms at a short integration time match the analytics") {
  // T_c = 8: alarms are frequent enough for tight statistics.
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const auto cfg = exp_config(8.0);
  const auto res = measure_false_alarm_rate(cfg, bank, 4000, 400.0, 42, 0.01);
  CHECK(res.alarms > 100);
  CHECK_FALSE(res.wide_ci_warning);
  const auto stats = analytics::correlator_stats(1.0);
  const double uncorrected = analytics::false_alarm_rate(
      OuterKernel::Exponential, analytics::ThresholdPolicy::FixedTheta, stats,
      cfg.T_c, 1.0);
  const double corrected = analytics::false_alarm_rate(
      OuterKernel::Exponential, analytics::ThresholdPolicy::FixedTheta, stats,
      cfg.T_c, 1.0, true);
  // The Gaussian first-passage form overestimates; the non-Gaussian
  // correction lands close at moderate T_c.
  CHECK(res.rate_per_pair < 1.5 * uncorrected);
  CHECK(res.rate_per_pair > 0.5 * corrected);
}

TEST_CASE("longer integration strictly suppresses false alarms") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const auto r1 = measure_false_alarm_rate(exp_config(8.0), bank, 1500, 400.0, 7, 0.01);
  const auto r2 = measure_false_alarm_rate(exp_config(12.0), bank, 1500, 400.0, 7, 0.01);
  CHECK(r2.rate_per_pair < r1.rate_per_pair);
}

TEST_CASE("rectangular and exponential kernels alarm equally at T_c^r = 2 T_c^e") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  CorrelatorConfig exp_cfg = exp_config(8.0);
  CorrelatorConfig rect_cfg = exp_cfg;
  rect_cfg.kernel = OuterKernel::Rectangular;
  rect_cfg.T_c = 16.0;
  const auto re = measure_false_alarm_rate(exp_cfg, bank, 2500, 400.0, 19, 0.01);
  const auto rr = measure_false_alarm_rate(rect_cfg, bank, 2500, 400.0, 19, 0.01);
  CHECK(re.alarms > 50);
  CHECK(rr.alarms > 50);
  const double ratio = rr.rate_per_pair / re.rate_per_pair;
  CHECK(ratio > 1.0 / 2.5);
  CHECK(ratio < 2.5);
}

TEST_CASE("no alarms yields a one-sided bound and a warning") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const auto res = measure_false_alarm_rate(exp_config(40.0), bank, 50, 50.0, 3, 0.01);
  CHECK(res.alarms < 10);
  CHECK(res.wide_ci_warning);
}

TEST_CASE("response time of an injected error matches the noiseless formula") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const auto cfg = exp_config(10.0);
  const auto res = measure_response_time(cfg, bank, PauliString::single(1, Pauli::X),
                                         600, 11, 0.01);
  CHECK(res.detected > 350);
  const double expected =
      analytics::response_time(OuterKernel::Exponential, 1.0, cfg.T_c);
  CHECK(res.mean_delay == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("X and Z errors are reported with the same delay") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const auto cfg = exp_config(10.0);
  const auto rx = measure_response_time(cfg, bank, PauliString::single(1, Pauli::X),
                                        500, 21, 0.01);
  const auto rz = measure_response_time(cfg, bank, PauliString::single(1, Pauli::Z),
                                        500, 22, 0.01);
  CHECK(std::abs(rx.mean_delay - rz.mean_delay) <
        2.0 * (rx.ci_half_width + rz.ci_half_width));
}

TEST_CASE("small thresholds report almost immediately") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  auto cfg = exp_config(10.0, 0.05);
  const auto res = measure_response_time(cfg, bank, PauliString::single(2, Pauli::Y),
                                         200, 31, 0.01);
  CHECK(res.mean_delay < 0.12 * cfg.T_c);
}

TEST_CASE("input validation") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  CHECK_THROWS_AS(measure_false_alarm_rate(exp_config(10.0), bank, 0, 10.0, 1, 0.01),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_response_time(exp_config(10.0), bank,
                                        PauliString::parse("X1X2"), 10, 1, 0.01),
                  std::invalid_argument);
}
