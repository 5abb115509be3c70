// Copyright 2026 The polyatree Authors
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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "polyatree/rng.hpp"

namespace polyatree {

// Distribution of the maximum of the standard Brownian excursion:
//   M(x) = 1 - 2 sum_{k>=1} (4k^2x^2 - 1) exp(-2k^2x^2).
// Below x = 1 the equivalent form
//   sqrt(2) pi^(5/2) x^-3 sum_{m>=1} m^2 exp(-pi^2 m^2 / (2x^2))
// is summed instead. Terms are added until they drop below 1e-15.
// Throws Error(invalid_argument) for x <= 0.
double excursion_max_cdf(double x);

// Derivative of excursion_max_cdf; 0 for x <= 0.
double excursion_max_density(double x);

// Fit of heights H of trees on n vertices to the excursion maximum through
// mu + sigma * H / (2 sqrt n) ~ M, so that sigma estimates the offspring
// standard deviation.
enum class HeightFit {
  // Least squares between the empirical density of x = H / (2 sqrt n) and
  // the bare function M'(mu + sigma x), without the Jacobian factor sigma.
  shape,
  // Maximum likelihood, each height owning the lattice cell H +- 1/2.
  likelihood,
};

struct ScaleFit {
  double mu = 0;
  double sigma = 0;
};

// height_hist maps heights to counts. Throws Error(invalid_argument) for an
// empty histogram or n == 0.
ScaleFit fit_height_scale(const std::map<std::uint32_t, std::uint64_t>& height_hist,
                          std::size_t n, HeightFit method);

// Maximum of the local-time profile, distributed as twice the excursion
// maximum: M(x / 2).
double width_max_cdf(double x);

// Magnitudes of the first 20 zeros of the Airy function Ai.
const std::array<double, 20>& airy_zero_table();

// Tricomi's confluent hypergeometric function for real a, b (b not an
// integer) and z > 0: the two-term 1F1 combination up to z = 20, the
// large-z asymptotic series above.
double kummer_u(double a, double b, double z);

// Density of the Brownian excursion area,
//   2^(13/6) 3^(-3/2) x^(-10/3) sum_i exp(-v_i) a_i^2 U(-5/6, 4/3; v_i),
//   v_i = 2 a_i^3 / (27 x^2),
// over the first `terms` (1..20) zero magnitudes a_i. From x = 2.6 on, where
// the series cancels below double resolution (density < 1e-15), the tail
// 72 sqrt(6/pi) x^2 exp(-6x^2) is returned. Throws Error(invalid_argument) for x <= 0 or terms outside 1..20.
double airy_area_density(double x, int terms = 20);

struct MaxDegreeLaw {
  std::size_t n = 1;
  double rho = 0.3383218568992077;
  double c = 1.1103;
};

// P(max degree <= m) ~ exp(-c n rho^m). Throws Error(invalid_argument) for
// an invalid law.
double max_degree_cdf(const MaxDegreeLaw& law, double m);
// Inverse transform: log(-log(u) / (c n)) / log(rho) for u in (0, 1).
double max_degree_sample(const MaxDegreeLaw& law, double u);
// The m with c n rho^m = 1.
double max_degree_location(const MaxDegreeLaw& law);

// Sorts `empirical`, draws as many reference values, sorts them, and pairs
// them by rank. Throws Error(invalid_argument) on an empty sample.
std::vector<std::pair<double, double>> qq_pairs(std::vector<double> empirical,
                                                const std::function<double(Rng&)>& reference,
                                                Rng& rng);

// sup_x |F_n(x) - cdf(x)| for the empirical distribution of `sample`.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);
// Two-sample statistic sup_x |F(x) - G(x)|.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace polyatree
