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
#include <functional>
#include <string>
#include <vector>

#include "polyatree/forest.hpp"
#include "polyatree/permutation.hpp"
#include "polyatree/rng.hpp"

namespace polyatree {

struct ChiSquare {
  double statistic = 0;
  std::size_t dof = 0;
  double p_value = 1;
};

// Pearson test of observed counts against equal cell probabilities.
ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts);

// Uniform permutation of [n] fixing 1.
Permutation random_permutation_fixing_one(std::size_t n, Rng& rng);

// Dense class ids for isomorphism classes, keyed by AHU root code.
class ClassIndex {
 public:
  std::size_t classify(const RootedTree& t);
  std::size_t size() const { return codes_.size(); }

 private:
  std::vector<std::vector<std::uint32_t>> codes_;
};

enum class ValidateLevel { quick, full };
// Throws Error(invalid_argument) for anything but "quick" / "full".
ValidateLevel parse_validate_level(const std::string& name);

// quick: exact Polya and Cayley counts for n <= 10, Prufer round trips, n = 4
// chain class frequencies. full adds brute-force invariant-tree counts for
// n <= 7, the orbit-counting identity for n <= 8 and a chi-square test over
// the 115 classes at n = 8. Each check emits one "PASS name: detail" or
// "FAIL name: detail" line. Returns true iff every check passed.
bool run_validation(ValidateLevel level, std::uint64_t seed,
                    const std::function<void(const std::string&)>& emit);

}  // namespace polyatree
