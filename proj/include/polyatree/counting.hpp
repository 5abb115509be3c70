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

#include <cstdint>
#include <string>
#include <vector>

#include "polyatree/bigcount.hpp"
#include "polyatree/permutation.hpp"

namespace polyatree {

// (m*x + y)^(m-1) * y: decorated forests on [m] with x edge labels and y
// root labels. Throws Error(invalid_argument) for m = 0.
BigCount f_count(std::uint64_t m, std::uint64_t x, std::uint64_t y);

// Number of trees on [n] rooted at 1 and invariant under s:
//   lambda_1^(lambda_1 - 2) * prod_{d >= 2} f(lambda_d, d, mu_d),
// with the first factor equal to 1 when lambda_1 is 1 or 2.
// Throws Error(not_fixing_one).
BigCount count_invariant_trees(const Permutation& s);
// Same, from a cycle type; lambda_1 must be positive.
BigCount count_invariant_trees(const CycleIndex& type);
// Human-readable factorisation, e.g. "2^0 * f(1,2,2) = 2".
std::string invariant_count_formula(const CycleIndex& type);

// Rooted unlabeled trees t_1 .. t_nmax, from
//   t_{n+1} = (1/n) sum_{k=1}^{n} (sum_{d|k} d t_d) t_{n-k+1},   t_1 = 1,
// which follows by taking the logarithmic derivative of
//   t(x) = x exp(sum_{k>=1} t(x^k)/k).
// Element i holds t_{i+1}.
std::vector<BigCount> polya_counts(std::size_t nmax);

// Functions [n] -> [n] commuting with s: prod_d (sum_{e|d} e lambda_e)^lambda_d.
BigCount count_commuting_functions(const Permutation& s);
BigCount count_commuting_functions(const CycleIndex& type);

// Leaf-labelled rooted binary trees fixed by a permutation of the leaves with
// the given cycle lengths (any order). The product
//   prod_{i=2}^{l} (2(lambda_i + ... + lambda_l) - 1)
// over lengths sorted decreasingly applies when every length is a power of
// two; otherwise no such tree is fixed and the result is 0.
// Throws Error(invalid_argument) for an empty list or a zero length.
BigCount count_phylo_fixed(std::vector<std::uint32_t> lengths);

}  // namespace polyatree
