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

#include "polyatree/counting.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyatree/error.hpp"

namespace polyatree {

BigCount f_count(std::uint64_t m, std::uint64_t x, std::uint64_t y) {
  if (m == 0) fail(Errc::invalid_argument, "f(m, x, y) requires m >= 1");
  BigCount base = BigCount(m) * x + y;
  return boost::multiprecision::pow(base, static_cast<unsigned>(m - 1)) * y;
}

namespace {

BigCount fixed_point_factor(std::uint64_t l1) {
  if (l1 <= 2) return 1;
  return boost::multiprecision::pow(BigCount(l1), static_cast<unsigned>(l1 - 2));
}

}  // namespace

BigCount count_invariant_trees(const CycleIndex& type) {
  const std::uint32_t l1 = type.count(1);
  if (l1 == 0) fail(Errc::not_fixing_one, "cycle type has no fixed point for the root");
  BigCount total = fixed_point_factor(l1);
  for (const auto& [d, lambda_d] : type.lambda) {
    if (d == 1 || lambda_d == 0) continue;
    total *= f_count(lambda_d, d, type.strict_divisor_points(d));
  }
  return total;
}

BigCount count_invariant_trees(const Permutation& s) {
  if (s.size() == 0 || !s.fixes(1)) fail(Errc::not_fixing_one, "permutation must fix the root 1");
  return count_invariant_trees(s.cycle_type());
}

std::string invariant_count_formula(const CycleIndex& type) {
  const std::uint32_t l1 = type.count(1);
  if (l1 == 0) fail(Errc::not_fixing_one, "cycle type has no fixed point for the root");
  std::ostringstream out;
  out << l1 << "^" << (l1 >= 2 ? std::to_string(l1 - 2) : std::string("(-1)"));
  for (const auto& [d, lambda_d] : type.lambda) {
    if (d == 1 || lambda_d == 0) continue;
    out << " * f(" << lambda_d << "," << d << "," << type.strict_divisor_points(d) << ")";
  }
  out << " = " << count_invariant_trees(type);
  return out.str();
}

std::vector<BigCount> polya_counts(std::size_t nmax) {
  std::vector<BigCount> t(nmax + 1, 0);  // 1-based
  std::vector<BigCount> s(nmax + 1, 0);  // s_k = sum_{d|k} d t_d
  if (nmax == 0) return {};
  t[1] = 1;
  for (std::size_t n = 1; n < nmax; ++n) {
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d == 0) s[n] += BigCount(d) * t[d];
    }
    BigCount acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += s[k] * t[n - k + 1];
    t[n + 1] = acc / n;
  }
  return {t.begin() + 1, t.end()};
}

BigCount count_commuting_functions(const CycleIndex& type) {
  BigCount total = 1;
  for (const auto& [d, lambda_d] : type.lambda) {
    if (lambda_d == 0) continue;
    total *= boost::multiprecision::pow(BigCount(type.divisor_points(d)), lambda_d);
  }
  return total;
}

BigCount count_commuting_functions(const Permutation& s) {
  return count_commuting_functions(s.cycle_type());
}

BigCount count_phylo_fixed(std::vector<std::uint32_t> lengths) {
  if (lengths.empty()) fail(Errc::invalid_argument, "empty cycle type");
  for (auto len : lengths) {
    if (len == 0) fail(Errc::invalid_argument, "cycle lengths must be positive");
    if ((len & (len - 1)) != 0) return 0;
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>{});
  BigCount total = 1;
  std::uint64_t tail = 0;
  for (std::size_t i = lengths.size(); i-- > 1;) {
    tail += lengths[i];
    total *= 2 * tail - 1;
  }
  return total;
}

}  // namespace polyatree
