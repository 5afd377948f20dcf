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

#include "bslab/chi.hpp"

namespace bslab {

namespace {

Eigen::Matrix2cd pauli2(int a) {
  Eigen::Matrix2cd m;
  const cd i{0.0, 1.0};
  switch (a) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

std::array<LogicalBloch, 4> tomography_inputs() {
  return {LogicalBloch{0, 0, 1}, LogicalBloch{0, 0, -1}, LogicalBloch{1, 0, 0},
          LogicalBloch{0, 1, 0}};
}

std::array<std::pair<cd, cd>, 4> tomography_amplitudes() {
  const double r = 1.0 / std::sqrt(2.0);
  return {std::pair<cd, cd>{1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, cd(0.0, r)}};
}

ChiMatrix chi_from_tomography(const std::array<DecodeAccumulator, 4>& outputs) {
  // Raw (trace-non-preserving) output operators O_s = w_s (1 + b_s . sigma)/2
  // for the inputs +z, -z, +x, +y. Weights must share a common scale.
  std::array<Eigen::Matrix2cd, 4> raw;
  for (int s = 0; s < 4; ++s) {
    const double w = outputs[s].weight;
    if (w <= 0.0) {
      throw std::invalid_argument("chi_from_tomography: vanishing weight");
    }
    const LogicalBloch b = outputs[s].bloch();
    raw[s] = 0.5 * w *
             (pauli2(0) + b.x * pauli2(1) + b.y * pauli2(2) + b.z * pauli2(3));
  }

  // Images of the basis matrices by linearity of the raw map:
  // E(I) = O(+z) + O(-z), E(sigma_z) = O(+z) - O(-z),
  // E(sigma_x) = 2 O(+x) - E(I), E(sigma_y) = 2 O(+y) - E(I).
  std::array<Eigen::Matrix2cd, 4> images;
  images[0] = raw[0] + raw[1];
  images[3] = raw[0] - raw[1];
  images[1] = 2.0 * raw[2] - images[0];
  images[2] = 2.0 * raw[3] - images[0];

  // E(|i><j|) by linearity; |i><j| = (delta_ij I + coeffs.sigma)/2.
  auto apply = [&](int i, int j) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    if (i == j) {
      out += 0.5 * images[0];
      out += (i == 0 ? 0.5 : -0.5) * images[3];  // sigma_z coefficient
    } else if (i == 0 && j == 1) {
      out += 0.5 * images[1] + cd(0.0, 0.5) * images[2];  // (X + iY)/2
    } else {
      out += 0.5 * images[1] - cd(0.0, 0.5) * images[2];  // (X - iY)/2
    }
    return out;
  };

  // Choi matrix J = sum_{ij} E(|i><j|) (x) |i><j|, then chi over the Pauli
  // basis via chi_mn = vec(P_m)^dag J vec(P_n) / 4.
  Eigen::Matrix4cd J = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Eigen::Matrix2cd e = apply(i, j);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          J(2 * a + i, 2 * b + j) += e(a, b);
        }
      }
    }
  }
  ChiMatrix chi;
  for (int mth = 0; mth < 4; ++mth) {
    for (int nth = 0; nth < 4; ++nth) {
      // Vectorization layout (row-in-copy, column-in-copy) matching J above.
      Eigen::Vector4cd vm, vn;
      const Eigen::Matrix2cd pm = pauli2(mth), pn = pauli2(nth);
      for (int a = 0; a < 2; ++a) {
        for (int i = 0; i < 2; ++i) {
          vm[2 * a + i] = pm(a, i);
          vn[2 * a + i] = pn(a, i);
        }
      }
      chi.m(mth, nth) = (vm.adjoint() * J * vn)(0, 0) / 4.0;
    }
  }
  chi.normalize();
  return chi;
}

ChiMatrix chi_from_tomography(const std::array<LogicalBloch, 4>& outputs) {
  std::array<DecodeAccumulator, 4> acc;
  for (int s = 0; s < 4; ++s) {
    acc[s].weight = 1.0;
    acc[s].coherence = cd(outputs[s].x / 2.0, -outputs[s].y / 2.0);
    acc[s].z_diff = outputs[s].z;
  }
  return chi_from_tomography(acc);
}

ChiSlopes fit_chi_slopes(const std::vector<double>& times,
                         const std::vector<ChiMatrix>& chis,
                         double discard_fraction) {
  if (times.size() != chis.size() || times.size() < 3) {
    throw std::invalid_argument("fit_chi_slopes: need >= 3 aligned samples");
  }
  const double t_min = times.front() +
                       discard_fraction * (times.back() - times.front());
  std::vector<int> keep;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_min) keep.push_back(static_cast<int>(i));
  }
  const int n = static_cast<int>(keep.size());
  ChiSlopes out;
  if (n < 2) throw std::invalid_argument("fit_chi_slopes: too few samples after discard");
  double sx = 0, sxx = 0;
  for (int k : keep) { sx += times[k]; sxx += times[k] * times[k]; }
  const double denom = n * sxx - sx * sx;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      double syr = 0, sxyr = 0, syi = 0, sxyi = 0;
      for (int k : keep) {
        const cd y = chis[k].m(r, c);
        syr += y.real();
        sxyr += times[k] * y.real();
        syi += y.imag();
        sxyi += times[k] * y.imag();
      }
      const double br = (n * sxyr - sx * syr) / denom;
      const double bi = (n * sxyi - sx * syi) / denom;
      out.slope(r, c) = cd(br, bi);
      // Residual-based standard errors.
      const double ar = (syr - br * sx) / n, ai = (syi - bi * sx) / n;
      double ssr_r = 0, ssr_i = 0;
      for (int k : keep) {
        const cd y = chis[k].m(r, c);
        const double er = y.real() - (ar + br * times[k]);
        const double ei = y.imag() - (ai + bi * times[k]);
        ssr_r += er * er;
        ssr_i += ei * ei;
      }
      if (n > 2) {
        out.slope_se_real(r, c) = std::sqrt(ssr_r / (n - 2) * n / denom);
        out.slope_se_imag(r, c) = std::sqrt(ssr_i / (n - 2) * n / denom);
      }
    }
  }
  return out;
}

}  // namespace bslab
