#include <doctest.h>

#include <stdexcept>

#include <bslab/fitting.hpp>
#include <bslab/rng.hpp>

using namespace bslab;

TEST_CASE("wls line recovers slope and intercept") {
  std::vector<double> x, y, w;
  for (int i = 0; i < 40; ++i) {
    x.push_back(i);
    y.push_back(2.5 - 0.013 * i);
    w.push_back(1.0);
  }
  const auto fit = wls_line(x, y, w);
  CHECK(fit.slope == doctest::Approx(-0.013).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("termination fit recovers a synthetic decay with binomial noise") {
  const double rate = 0.01;
  const int n = 10000;
  Rng rng(99, 0);
  std::vector<SurvivalSample> samples;
  for (int k = 1; k <= 30; ++k) {
    const double t = 10.0 * k;
    const double p = std::exp(-rate * t);
    int alive = 0;
    for (int i = 0; i < n; ++i) alive += (rng.uniform() < p);
    samples.push_back({t, std::max(1, alive) / double(n), double(n)});
  }
  const auto fit = fit_termination(samples);
  CHECK(std::abs(fit.rate - rate) < 2.0 * std::max(fit.stderr_, 1e-4));
  CHECK(fit.rate == doctest::Approx(rate).epsilon(0.05));
}

TEST_CASE("all-surviving input gives rate zero with a one-sided bound") {
  std::vector<SurvivalSample> samples;
  for (int k = 1; k <= 10; ++k) samples.push_back({k * 1.0, 1.0, 1000.0});
  const auto fit = fit_termination(samples);
  CHECK(fit.all_surviving);
  CHECK(fit.rate == 0.0);
  CHECK(fit.stderr_ == doctest::Approx(3.0 / (1000.0 * 10.0)));
}

TEST_CASE("two-scale data is fit over the tail window") {
  // Fast transient (rate 0.2) on top of a slow tail (rate 0.004).
  std::vector<SurvivalSample> samples;
  for (int k = 1; k <= 50; ++k) {
    const double t = 4.0 * k;
    const double p = 0.25 * std::exp(-0.2 * t) + 0.75 * std::exp(-0.004 * t);
    samples.push_back({t, p, 1.0});
  }
  const auto tail_fit = fit_termination(samples, 0.3);
  CHECK(tail_fit.rate == doctest::Approx(0.004).epsilon(0.02));
}

TEST_CASE("fractions outside (0, 1] are rejected") {
  CHECK_THROWS_AS(fit_termination({{1.0, 0.0, 10.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_termination({{1.0, 1.5, 10.0}}), std::invalid_argument);
}
