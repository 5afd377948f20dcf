// Copyright 2026 the bslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bslab/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace bslab {

LineFit wls_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
  const std::size_t n = x.size();
  if (y.size() != n || w.size() != n || n < 2) {
    throw std::invalid_argument("wls_line: need >= 2 aligned samples");
  }
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
    swxx += w[i] * x[i] * x[i];
    swxy += w[i] * x[i] * y[i];
  }
  const double denom = sw * swxx - swx * swx;
  if (denom <= 0.0) throw std::invalid_argument("wls_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (sw * swxy - swx * swy) / denom;
  fit.intercept = (swy - fit.slope * swx) / sw;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    chi2 += w[i] * r * r;
  }
  const double sigma2 = (n > 2) ? chi2 / (n - 2) : 0.0;
  fit.slope_se = std::sqrt(sigma2 * sw / denom);
  fit.intercept_se = std::sqrt(sigma2 * swxx / denom);
  return fit;
}

TerminationFit fit_termination(const std::vector<SurvivalSample>& samples,
                               double discard_fraction) {
  if (samples.empty()) throw std::invalid_argument("fit_termination: no samples");
  for (const auto& s : samples) {
    if (s.fraction <= 0.0 || s.fraction > 1.0) {
      throw std::invalid_argument("fit_termination: fractions must be in (0, 1]");
    }
  }
  bool all_surviving = true;
  for (const auto& s : samples) all_surviving &= (s.fraction >= 1.0);
  if (all_surviving) {
    TerminationFit fit;
    fit.all_surviving = true;
    const auto& last = samples.back();
    // One-sided 95% bound for zero observed events ("rule of three").
    fit.stderr_ = 3.0 / (std::max(last.n, 1.0) * std::max(last.t, 1e-300));
    return fit;
  }

  const double t0 = samples.front().t, t1 = samples.back().t;
  const double t_min = t0 + discard_fraction * (t1 - t0);
  std::vector<double> x, y, w;
  for (const auto& s : samples) {
    if (s.t < t_min) continue;
    x.push_back(s.t);
    y.push_back(std::log(s.fraction));
    // Var(log p) ~ (1 - p) / (n p); the 1/n floor keeps all-survivor bins
    // at a finite weight.
    const double var = (1.0 - s.fraction + 1.0 / std::max(s.n, 2.0)) /
                       (std::max(s.n, 1.0) * s.fraction);
    w.push_back(1.0 / var);
  }
  if (x.size() < 5) {
    throw std::invalid_argument("fit_termination: need >= 5 usable points");
  }
  const LineFit line = wls_line(x, y, w);
  TerminationFit fit;
  fit.rate = -line.slope;
  fit.stderr_ = line.slope_se;
  fit.intercept = line.intercept;
  fit.points_used = static_cast<int>(x.size());
  return fit;
}

}  // namespace bslab
