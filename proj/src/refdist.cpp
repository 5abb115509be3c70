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

#include "polyatree/refdist.hpp"

#include <algorithm>
#include <cmath>

#include "polyatree/error.hpp"

namespace polyatree {

namespace {

constexpr double kTermCutoff = 1e-15;
constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

double excursion_max_cdf(double x) {
  if (!(x > 0)) fail(Errc::invalid_argument, "excursion_max_cdf needs x > 0");
  if (x < 1.0) {
    const double scale = std::sqrt(2.0) * std::pow(kPi, 2.5) / (x * x * x);
    double sum = 0;
    for (int m = 1;; ++m) {
      const double md = m;
      const double term = md * md * std::exp(-kPi * kPi * md * md / (2 * x * x));
      sum += term;
      if (scale * term < kTermCutoff) break;
    }
    return std::min(1.0, scale * sum);
  }
  double sum = 0;
  for (int k = 1;; ++k) {
    const double k2x2 = static_cast<double>(k) * k * x * x;
    const double term = (4 * k2x2 - 1) * std::exp(-2 * k2x2);
    sum += term;
    if (std::abs(term) < kTermCutoff) break;
  }
  return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

double excursion_max_density(double x) {
  if (!(x > 0)) return 0.0;
  if (x < 1.0) {
    // d/dx of sqrt(2) pi^(5/2) x^-3 sum m^2 exp(-a m^2 / x^2), a = pi^2 / 2.
    const double a = kPi * kPi / 2;
    const double scale = std::sqrt(2.0) * std::pow(kPi, 2.5);
    double sum = 0;
    for (int m = 1;; ++m) {
      const double m2 = static_cast<double>(m) * m;
      const double term = m2 * std::exp(-a * m2 / (x * x)) *
                          (2 * a * m2 / std::pow(x, 6) - 3 / std::pow(x, 4));
      sum += term;
      if (std::abs(scale * term) < kTermCutoff && m2 * a > x * x) break;
    }
    return std::max(0.0, scale * sum);
  }
  // -8x sum k^2 (3 - 4k^2x^2) exp(-2k^2x^2)
  double sum = 0;
  for (int k = 1;; ++k) {
    const double k2 = static_cast<double>(k) * k;
    const double term = k2 * (3 - 4 * k2 * x * x) * std::exp(-2 * k2 * x * x);
    sum += term;
    if (std::abs(term) < kTermCutoff) break;
  }
  return std::max(0.0, -8 * x * sum);
}

namespace {

// Compass search over (mu, sigma), halving the step when no neighbour improves.
template <class F>
ScaleFit minimise(F objective, ScaleFit start) {
  ScaleFit best = start;
  double value = objective(best.mu, best.sigma);
  for (double step = 0.05; step > 1e-6; step /= 2) {
    for (bool improved = true; improved;) {
      improved = false;
      for (int dm = -1; dm <= 1; ++dm) {
        for (int ds = -1; ds <= 1; ++ds) {
          const double mu = best.mu + dm * step;
          const double sigma = best.sigma + ds * step;
          if (sigma <= 0) continue;
          const double v = objective(mu, sigma);
          if (v < value) {
            value = v;
            best = {mu, sigma};
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

double safe_cdf(double x) { return x > 0 ? excursion_max_cdf(x) : 0.0; }

}  // namespace

ScaleFit fit_height_scale(const std::map<std::uint32_t, std::uint64_t>& height_hist,
                          std::size_t n, HeightFit method) {
  if (n == 0) fail(Errc::invalid_argument, "fit_height_scale needs n >= 1");
  double total = 0, sum = 0, sum2 = 0;
  const double unit = 1 / (2 * std::sqrt(static_cast<double>(n)));
  for (const auto& [h, count] : height_hist) {
    const double x = h * unit;
    total += static_cast<double>(count);
    sum += count * x;
    sum2 += count * x * x;
  }
  if (total == 0) fail(Errc::invalid_argument, "fit_height_scale needs a nonempty histogram");
  // Moment match to start: M has mean sqrt(pi/2) and variance pi^2/6 - pi/2.
  const double mean = sum / total;
  const double var = std::max(sum2 / total - mean * mean, unit * unit);
  ScaleFit start;
  start.sigma = std::sqrt((kPi * kPi / 6 - kPi / 2) / var);
  start.mu = std::sqrt(kPi / 2) - start.sigma * mean;

  if (method == HeightFit::shape) {
    const std::uint32_t lo = height_hist.begin()->first;
    const std::uint32_t hi = height_hist.rbegin()->first;
    const std::uint32_t pad = 5;
    return minimise(
        [&](double mu, double sigma) {
          double err = 0;
          for (std::uint32_t h = lo > pad ? lo - pad : 0; h <= hi + pad; ++h) {
            const auto it = height_hist.find(h);
            const double density =
                it == height_hist.end() ? 0.0 : static_cast<double>(it->second) / (total * unit);
            const double d = density - excursion_max_density(mu + sigma * h * unit);
            err += d * d;
          }
          return err;
        },
        start);
  }
  return minimise(
      [&](double mu, double sigma) {
        double nll = 0;
        for (const auto& [h, count] : height_hist) {
          const double p = safe_cdf(mu + sigma * (h + 0.5) * unit) -
                           safe_cdf(mu + sigma * (h - 0.5) * unit);
          nll -= static_cast<double>(count) * std::log(std::max(p, 1e-300));
        }
        return nll;
      },
      start);
}

double width_max_cdf(double x) {
  if (!(x > 0)) fail(Errc::invalid_argument, "width_max_cdf needs x > 0");
  return excursion_max_cdf(x / 2);
}

const std::array<double, 20>& airy_zero_table() {
  static const std::array<double, 20> zeros = {
      2.338107410459767,  4.0879494441309706, 5.5205598280955511, 6.786708090071759,
      7.9441335871208531, 9.0226508533409804, 10.040174341558086, 11.008524303733263,
      11.936015563236263, 12.828776752865757, 13.691489035210718, 14.527829951775335,
      15.340755135977997, 16.132685156945771, 16.905633997429943, 17.661300105697058,
      18.401132599207115, 19.126380474246952, 19.8381298917215,   20.537332907677566};
  return zeros;
}

namespace {

double hyp1f1(double a, double b, double z) {
  double term = 1;
  double sum = 1;
  for (int k = 0; k < 500; ++k) {
    term *= (a + k) / (b + k) * z / (k + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double kummer_u(double a, double b, double z) {
  if (!(z > 0)) fail(Errc::invalid_argument, "kummer_u needs z > 0");
  if (b == std::floor(b)) fail(Errc::invalid_argument, "kummer_u needs non-integer b");
  if (z <= 20) {
    return std::tgamma(1 - b) / std::tgamma(a - b + 1) * hyp1f1(a, b, z) +
           std::tgamma(b - 1) / std::tgamma(a) * std::pow(z, 1 - b) * hyp1f1(a - b + 1, 2 - b, z);
  }
  // z^-a sum_k (a)_k (a-b+1)_k / k! (-1/z)^k, stopped at the smallest term.
  double term = 1;
  double sum = 1;
  double previous = 1;
  for (int k = 0; k < 200; ++k) {
    term *= (a + k) * (a - b + 1 + k) / (k + 1) * (-1 / z);
    if (std::abs(term) > std::abs(previous)) break;
    sum += term;
    previous = term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::pow(z, -a) * sum;
}

double airy_area_density(double x, int terms) {
  if (!(x > 0)) fail(Errc::invalid_argument, "airy_area_density needs x > 0");
  if (terms < 1 || terms > 20) fail(Errc::invalid_argument, "terms must be in 1..20");
  if (x >= 2.6) return 72 * std::sqrt(6 / kPi) * x * x * std::exp(-6 * x * x);
  const auto& zeros = airy_zero_table();
  double sum = 0;
  for (int i = 0; i < terms; ++i) {
    const double a = zeros[i];
    const double v = 2 * a * a * a / (27 * x * x);
    sum += std::exp(-v) * a * a * kummer_u(-5.0 / 6, 4.0 / 3, v);
  }
  return std::pow(2.0, 13.0 / 6) * std::pow(3.0, -1.5) * std::pow(x, -10.0 / 3) * sum;
}

namespace {

void check_law(const MaxDegreeLaw& law) {
  if (law.n == 0) fail(Errc::invalid_argument, "max-degree law needs n >= 1");
  if (!(law.rho > 0 && law.rho < 1)) fail(Errc::invalid_argument, "rho must lie in (0, 1)");
  if (!(law.c > 0)) fail(Errc::invalid_argument, "c must be positive");
}

}  // namespace

double max_degree_cdf(const MaxDegreeLaw& law, double m) {
  check_law(law);
  return std::exp(-law.c * static_cast<double>(law.n) * std::pow(law.rho, m));
}

double max_degree_sample(const MaxDegreeLaw& law, double u) {
  check_law(law);
  if (!(u > 0 && u < 1)) fail(Errc::invalid_argument, "u must lie in (0, 1)");
  return std::log(-std::log(u) / (law.c * static_cast<double>(law.n))) / std::log(law.rho);
}

double max_degree_location(const MaxDegreeLaw& law) {
  check_law(law);
  return std::log(law.c * static_cast<double>(law.n)) / std::log(1 / law.rho);
}

std::vector<std::pair<double, double>> qq_pairs(std::vector<double> empirical,
                                                const std::function<double(Rng&)>& reference,
                                                Rng& rng) {
  if (empirical.empty()) fail(Errc::invalid_argument, "qq_pairs needs a nonempty sample");
  std::sort(empirical.begin(), empirical.end());
  std::vector<double> ref(empirical.size());
  for (auto& r : ref) r = reference(rng);
  std::sort(ref.begin(), ref.end());
  std::vector<std::pair<double, double>> out(empirical.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {empirical[i], ref[i]};
  return out;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) fail(Errc::invalid_argument, "ks_distance needs a nonempty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sample.size();) {
    // Ties: the empirical CDF jumps once over the whole run.
    std::size_t j = i;
    while (j < sample.size() && sample[j] == sample[i]) ++j;
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return d;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) fail(Errc::invalid_argument, "ks_distance needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace polyatree
