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

#include "polyatree/constants.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

#include "polyatree/error.hpp"

namespace polyatree {

namespace {

using Real = boost::multiprecision::mpfr_float;

// mpfr_float's default precision is process-wide.
std::mutex& precision_mutex() {
  static std::mutex m;
  return m;
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits)
      : lock_(precision_mutex()), saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::lock_guard<std::mutex> lock_;
  unsigned saved_;
};

std::string to_decimal(const Real& x, unsigned digits) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

struct Solution {
  std::vector<Real> u;  // 1-based
  Real rho;
  Real residual;
  unsigned iterations = 0;
};

// Evaluates F and, if jac is non-null, its Jacobian (row-major, (n+1)^2).
void evaluate(const std::vector<Real>& u, const Real& rho, std::size_t n, const Real& epsilon,
              std::vector<Real>& f, std::vector<Real>* jac) {
  const std::size_t dim = n + 1;
  f.assign(dim, Real(0));
  if (jac) jac->assign(dim * dim, Real(0));
  Real rho_pow = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    const Real rho_prev = rho_pow;  // rho^(i-1)
    rho_pow *= rho;
    Real sum = 0;
    for (std::size_t j = 1; i * j <= n; ++j) sum += u[i * j] / j;
    const Real term = rho_pow * exp(sum);
    f[i - 1] = u[i] - term;
    if (jac) {
      auto& J = *jac;
      for (std::size_t j = 1; i * j <= n; ++j) J[(i - 1) * dim + (i * j - 1)] -= term / j;
      J[(i - 1) * dim + (i - 1)] += 1;
      J[(i - 1) * dim + n] = -Real(i) * rho_prev * exp(sum);
    }
  }
  f[n] = u[1] - 1 + epsilon;
  if (jac) (*jac)[n * dim + 0] = 1;
}

// Solves J x = b in place (b becomes x) by elimination with partial pivoting.
void gauss_solve(std::vector<Real>& J, std::vector<Real>& b, std::size_t dim) {
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (abs(J[r * dim + col]) > abs(J[piv * dim + col])) piv = r;
    }
    if (J[piv * dim + col] == 0) fail(Errc::numeric_failure, "singular Jacobian");
    if (piv != col) {
      for (std::size_t c = 0; c < dim; ++c) std::swap(J[piv * dim + c], J[col * dim + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < dim; ++r) {
      const Real factor = J[r * dim + col] / J[col * dim + col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < dim; ++c) J[r * dim + c] -= factor * J[col * dim + c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t r = dim; r-- > 0;) {
    Real acc = b[r];
    for (std::size_t c = r + 1; c < dim; ++c) acc -= J[r * dim + c] * b[c];
    b[r] = acc / J[r * dim + r];
  }
}

Real max_norm(const std::vector<Real>& v) {
  Real m = 0;
  for (const auto& x : v) m = std::max<Real>(m, abs(x));
  return m;
}

// Caller holds a PrecisionGuard.
Solution newton(std::size_t n, unsigned precision, const Real& epsilon) {
  const std::size_t dim = n + 1;
  Solution s;
  s.rho = Real("0.338");
  s.u.assign(dim, Real(0));
  Real p = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    p *= s.rho;
    s.u[i] = p;
  }
  const Real tol = pow(Real(10), -static_cast<int>(precision - 5));
  std::vector<Real> f, jac;
  for (s.iterations = 0; s.iterations < 50; ++s.iterations) {
    evaluate(s.u, s.rho, n, epsilon, f, &jac);
    s.residual = max_norm(f);
    if (s.residual < tol) return s;
    gauss_solve(jac, f, dim);
    for (std::size_t i = 1; i <= n; ++i) s.u[i] -= f[i - 1];
    s.rho -= f[n];
    if (!(s.rho > 0 && s.rho < 1)) fail(Errc::numeric_failure, "Newton iterate left (0, 1)");
  }
  evaluate(s.u, s.rho, n, epsilon, f, nullptr);
  s.residual = max_norm(f);
  if (!(s.residual < tol)) {
    fail(Errc::numeric_failure, "Newton did not converge in 50 iterations (residual " +
                                    to_decimal(s.residual, 6) + ")");
  }
  return s;
}

void check_options(std::size_t truncation, unsigned precision) {
  if (truncation < 10) fail(Errc::invalid_argument, "truncation must be at least 10");
  if (precision < 20) fail(Errc::invalid_argument, "precision must be at least 20 digits");
}

Real b_from(std::size_t truncation, unsigned precision, const Real& rho, double epsilon) {
  if (!(epsilon > 0)) fail(Errc::invalid_argument, "epsilon must be positive");
  const Real eps(epsilon);
  const Solution perturbed = newton(truncation, precision, eps);
  if (perturbed.rho >= rho) fail(Errc::numeric_failure, "perturbed root is not below rho");
  return eps / sqrt(rho - perturbed.rho);
}

}  // namespace

RhoSolution solve_rho(std::size_t truncation, unsigned precision, double epsilon) {
  check_options(truncation, precision);
  PrecisionGuard guard(precision);
  const Solution s = newton(truncation, precision, Real(epsilon));
  RhoSolution out;
  out.rho = to_decimal(s.rho, precision);
  out.rho_value = s.rho.convert_to<double>();
  out.residual = s.residual.convert_to<double>();
  out.iterations = s.iterations;
  for (std::size_t i = 1; i <= truncation; ++i) out.u.push_back(to_decimal(s.u[i], precision));
  return out;
}

std::string estimate_b(std::size_t truncation, unsigned precision, double epsilon) {
  check_options(truncation, precision);
  PrecisionGuard guard(precision);
  const Solution s = newton(truncation, precision, Real(0));
  return to_decimal(b_from(truncation, precision, s.rho, epsilon), precision);
}

double sigma_gw(double b, double rho) { return b * std::sqrt(rho / 2); }

OtterConstants otter_constants(std::size_t truncation, unsigned precision, double epsilon) {
  check_options(truncation, precision);
  PrecisionGuard guard(precision);
  const Solution s = newton(truncation, precision, Real(0));
  const Real b = b_from(truncation, precision, s.rho, epsilon);
  const Real sigma = b * sqrt(s.rho / 2);
  OtterConstants out;
  out.rho = to_decimal(s.rho, precision);
  out.b = to_decimal(b, precision);
  out.sigma = to_decimal(sigma, precision);
  out.rho_value = s.rho.convert_to<double>();
  out.b_value = b.convert_to<double>();
  out.sigma_value = sigma.convert_to<double>();
  out.truncation = truncation;
  out.precision = precision;
  return out;
}

std::string round_significant(const std::string& decimal, unsigned digits) {
  if (digits == 0) fail(Errc::invalid_argument, "digits must be positive");
  PrecisionGuard guard(std::max<unsigned>(static_cast<unsigned>(decimal.size()) + 10, 30));
  Real x;
  try {
    x = Real(decimal);
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, "not a decimal number: " + decimal);
  }
  // showpoint keeps trailing zeros, which are significant here.
  return x.str(digits, std::ios_base::showpoint);
}

double log_polya_asymptotic(std::size_t n, double rho, double b) {
  const double nd = static_cast<double>(n);
  return std::log(b * std::sqrt(rho) / (2 * std::sqrt(M_PI))) - 1.5 * std::log(nd) -
         nd * std::log(rho);
}

}  // namespace polyatree
