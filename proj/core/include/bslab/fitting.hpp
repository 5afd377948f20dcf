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

#pragma once

#include <vector>

namespace bslab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
};

/// Weighted least squares y = intercept + slope * x. Standard errors are
/// scaled by the residual variance of unit-weight data.
LineFit wls_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w);

struct SurvivalSample {
  double t = 0.0;
  double fraction = 1.0;  // surviving fraction in (0, 1]
  double n = 1.0;         // trajectories behind the fraction (1 = exact curve)
};

struct TerminationFit {
  double rate = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;  // log-survival offset absorbing transients
  int points_used = 0;
  bool all_surviving = false;  // rate 0; stderr_ is a one-sided 95% bound
};

/**
 * Exponential-decay rate of a survival curve: weighted least squares on
 * log-fraction versus time, discarding the first `discard_fraction` of the
 * time range. Requires >= 5 usable points unless every point survives.
 */
TerminationFit fit_termination(const std::vector<SurvivalSample>& samples,
                               double discard_fraction = 0.1);

}  // namespace bslab
