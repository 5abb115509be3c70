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

#include <cstddef>
#include <string>
#include <vector>

namespace polyatree {

// Otter's constants for rooted unlabeled trees: t_n ~ b sqrt(rho) / (2 sqrt(pi))
// n^(-3/2) rho^(-n). Decimal strings carry `precision` significant digits.
struct OtterConstants {
  std::string rho;
  std::string b;
  std::string sigma;  // b * sqrt(rho / 2)
  double rho_value = 0;
  double b_value = 0;
  double sigma_value = 0;
  std::size_t truncation = 0;
  unsigned precision = 0;
};

struct RhoSolution {
  std::string rho;
  std::vector<std::string> u;  // u_1 .. u_n, u_i = t(rho^i)
  double rho_value = 0;
  double residual = 0;  // max-norm of F at the returned point
  unsigned iterations = 0;
};

// Newton's method on
//   F(u, rho) = (u_i - rho^i exp(sum_{j <= n/i} u_{ij} / j))_{i=1..n}, u_1 - 1 + epsilon)
// from u_i = 0.338^i, rho = 0.338, at `precision` decimal digits. Stops when
// the residual drops below 10^-(precision-5) or after 50 iterations.
// Throws Error(invalid_argument) for truncation < 10 or precision < 20, and
// Error(numeric_failure) on a singular Jacobian or no convergence.
RhoSolution solve_rho(std::size_t truncation = 40, unsigned precision = 60, double epsilon = 0);

// b = epsilon / sqrt(rho - rho_epsilon), both solved at the same truncation
// and precision. Throws Error(numeric_failure) if rho_epsilon >= rho.
std::string estimate_b(std::size_t truncation = 40, unsigned precision = 60,
                       double epsilon = 1e-12);

double sigma_gw(double b, double rho);

OtterConstants otter_constants(std::size_t truncation = 40, unsigned precision = 60,
                               double epsilon = 1e-12);

// Rounds a decimal string to `digits` significant digits (scientific
// notation only when the exponent is outside [-5, digits)). Trailing zeros
// are kept.
std::string round_significant(const std::string& decimal, unsigned digits);

// Natural log of the asymptotic estimate b sqrt(rho)/(2 sqrt(pi)) n^(-3/2) rho^(-n).
double log_polya_asymptotic(std::size_t n, double rho, double b);

}  // namespace polyatree
