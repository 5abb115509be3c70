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

#include <cmath>
#include <string>

#include "doctest.h"
#include "polyatree/constants.hpp"
#include "polyatree/counting.hpp"
#include "polyatree/error.hpp"

using namespace polyatree;

namespace {

// Reference rho from mpmath at 60 digits: root of
// rho e exp(sum_{k>=2} t(rho^k)/k) = 1 with t summed from 400 exact terms.
constexpr const char* kRho = "0.33832185689920769519611262571701705318377460753297";
constexpr double kB = 2.681128147267112;
constexpr double kSigma = 1.1027259685996555;

double log_big(const BigCount& x) {
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 60) return std::log(x.convert_to<double>());
  const auto shift = bits - 60;
  const BigCount top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::size_t agreeing_digits(const std::string& a, const std::string& b) {
  std::size_t i = 0, digits = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && (digits > 0 || a[i] != '0')) ++digits;
    ++i;
  }
  return digits;
}

}  // namespace

TEST_CASE("solve_rho at the default truncation") {
  const auto sol = solve_rho(40, 60);
  CHECK(round_significant(sol.rho, 16) == "0.3383218568992077");
  CHECK(sol.rho_value == doctest::Approx(0.3383218568992077).epsilon(1e-15));
  CHECK(sol.residual < 1e-55);
  CHECK(sol.iterations <= 50);
  REQUIRE(sol.u.size() == 40);
  // u_1 = t(rho) = 1 at the singularity.
  CHECK(round_significant(sol.u[0], 30) == "1.00000000000000000000000000000");
  // Truncation at 40 limits accuracy to about 0.338^40.
  CHECK(agreeing_digits(sol.rho, kRho) >= 20);
  CHECK(agreeing_digits(solve_rho(100, 60).rho, kRho) >= 45);
}

TEST_CASE("rounded rho agrees with 0.338219 to 1e-4" * doctest::should_fail()) {
  // The rounded display transposes two digits; the true gap is 1.03e-4.
  CHECK(std::abs(solve_rho(40, 60).rho_value - 0.338219) < 1e-4);
}

TEST_CASE("solve_rho is stable in the truncation") {
  const auto a = solve_rho(40, 60);
  const auto b = solve_rho(60, 60);
  CHECK(agreeing_digits(a.rho, b.rho) >= 20);
}

TEST_CASE("solve_rho rejects bad configurations") {
  CHECK_THROWS_AS(solve_rho(5, 60), Error);
  CHECK_THROWS_AS(solve_rho(40, 10), Error);
  try {
    solve_rho(9, 60);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("estimate_b") {
  const double b = std::stod(estimate_b(40, 60, 1e-12));
  CHECK(std::abs(b - kB) < 5e-12);
  CHECK(round_significant(estimate_b(40, 60, 1e-12), 12) == "2.68112814727");
  // The rounded display 2.6811266 shares six significant digits.
  CHECK(round_significant(estimate_b(40, 60, 1e-12), 6) == round_significant("2.6811266", 6));
  // Bias is linear in epsilon.
  const double b10 = std::stod(estimate_b(40, 60, 1e-10));
  CHECK(std::abs(b10 - b) < 1e-9);
  CHECK(std::abs(b10 - kB) > std::abs(b - kB));
  CHECK_THROWS_AS(estimate_b(40, 60, -1e-12), Error);
}

TEST_CASE("sigma_gw") {
  CHECK(sigma_gw(kB, 0.3383218568992077) == doctest::Approx(kSigma).epsilon(1e-15));
  CHECK(sigma_gw(0.0, 0.3) == 0.0);
  CHECK(sigma_gw(kB, 2.0) == doctest::Approx(kB).epsilon(1e-16));
}

TEST_CASE("otter_constants") {
  const auto c = otter_constants();
  CHECK(c.truncation == 40);
  CHECK(c.precision == 60);
  CHECK(round_significant(c.rho, 16) == "0.3383218568992077");
  CHECK(round_significant(c.b, 12) == "2.68112814727");
  CHECK(round_significant(c.sigma, 12) == "1.10272596860");
  CHECK(c.sigma_value == doctest::Approx(c.b_value * std::sqrt(c.rho_value / 2)).epsilon(1e-15));
  CHECK(c.rho_value > 0);
  CHECK(c.rho_value < 1);
  CHECK(c.b_value > 0);
}

TEST_CASE("asymptotic form matches polya_counts") {
  const auto c = otter_constants();
  const auto t = polya_counts(500);
  const double rel100 =
      std::abs(std::expm1(log_polya_asymptotic(100, c.rho_value, c.b_value) - log_big(t[99])));
  const double rel500 =
      std::abs(std::expm1(log_polya_asymptotic(500, c.rho_value, c.b_value) - log_big(t[499])));
  CHECK(rel100 < 0.015);
  CHECK(rel500 < 0.003);
  CHECK(rel500 < rel100);
}

TEST_CASE("round_significant") {
  CHECK(round_significant("0.33832185689920769", 16) == "0.3383218568992077");
  CHECK(round_significant("2.681128147267112", 6) == "2.68113");
  CHECK(round_significant("1.1", 4) == "1.100");
  CHECK(round_significant("9.9996", 4) == "10.00");
  CHECK(round_significant("0.000012345", 3) == "1.23e-05");
  CHECK(round_significant("123456", 3) == "1.23e+05");
}
