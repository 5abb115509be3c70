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
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "polyatree/error.hpp"
#include "polyatree/invariance.hpp"
#include "polyatree/oracle.hpp"
#include "polyatree/prufer.hpp"

using namespace polyatree;

namespace {

// Exact mean of excursion_area over uniform Dyck paths with `steps` steps:
// E[S_k] from forward path counts, reusing f_{steps-k} = f_k reversed in time.
double exact_dyck_area_mean(std::size_t steps) {
  std::vector<std::vector<double>> f(steps + 1);
  f[0] = {1.0};
  for (std::size_t k = 1; k <= steps; ++k) {
    f[k].assign(k + 1, 0.0);
    for (std::size_t h = 0; h < f[k - 1].size(); ++h) {
      f[k][h + 1] += f[k - 1][h];
      if (h > 0) f[k][h - 1] += f[k - 1][h];
    }
    double top = 0;
    for (double v : f[k]) top = std::max(top, v);
    for (double& v : f[k]) v /= top;
  }
  double total = 0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const auto& a = f[k];
    const auto& b = f[steps - k];
    double num = 0, den = 0;
    for (std::size_t h = 0; h < std::min(a.size(), b.size()); ++h) {
      num += static_cast<double>(h) * a[h] * b[h];
      den += a[h] * b[h];
    }
    total += num / den;
  }
  return total / std::pow(static_cast<double>(steps), 1.5);
}

}  // namespace

TEST_CASE("enumerate_trees") {
  CHECK(oracle::enumerate_trees(1).size() == 1);
  CHECK(oracle::enumerate_trees(2).size() == 1);
  CHECK(oracle::enumerate_trees(3).size() == 3);
  CHECK(oracle::enumerate_trees(4).size() == 16);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto trees = oracle::enumerate_trees(n);
    std::set<std::vector<Vertex>> distinct;
    for (const auto& t : trees) {
      CHECK(t.is_tree_rooted_at_one());
      distinct.insert(std::vector<Vertex>(t.parents().begin(), t.parents().end()));
    }
    CHECK(distinct.size() == trees.size());
    std::size_t expected = 1;
    for (std::size_t i = 2; i < n; ++i) expected *= n;
    CHECK(trees.size() == expected);
  }
  CHECK_THROWS_AS(oracle::enumerate_trees(9), Error);
}

TEST_CASE("enumerate_invariant_trees") {
  const auto trees = oracle::enumerate_invariant_trees(Permutation::parse("(3,4)", 4));
  CHECK(trees.size() == 2);
  for (const auto& t : trees) CHECK(is_invariant(t, Permutation::parse("(3,4)", 4)));
  CHECK(oracle::enumerate_invariant_trees(Permutation::identity(5)).size() == 125);
}

TEST_CASE("enumerate_automorphisms") {
  const auto autos = oracle::enumerate_automorphisms(testing::full_binary7());
  CHECK(autos.size() == 8);
  std::set<std::vector<Vertex>> distinct(autos.begin(), autos.end());
  CHECK(distinct.size() == 8);
  CHECK(oracle::enumerate_automorphisms(RootedTree::star(6)).size() == 120);
  CHECK(oracle::enumerate_automorphisms(RootedTree::path(6)).size() == 1);
  CHECK_THROWS_AS(oracle::enumerate_automorphisms(RootedTree::star(9)), Error);
}

TEST_CASE("enumerate_commuting_functions") {
  CHECK(oracle::enumerate_commuting_functions(Permutation::identity(3)).size() == 27);
  CHECK(oracle::enumerate_commuting_functions(Permutation::parse("(1,2)", 2)).size() == 2);
  CHECK(oracle::enumerate_commuting_functions(Permutation::parse("(2,3)", 3)).size() == 3);
  CHECK_THROWS_AS(oracle::enumerate_commuting_functions(Permutation::identity(6)), Error);
}

TEST_CASE("enumerate_forests") {
  // (m + 1)^(m - 1) rooted forests on [m].
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto forests = oracle::enumerate_forests(m);
    std::size_t expected = 1;
    for (std::size_t i = 1; i < m; ++i) expected *= m + 1;
    CHECK(forests.size() == expected);
    for (const auto& f : forests) CHECK(f.size() == m);
  }
  CHECK(oracle::count_decorated_forests(3, 2, 2) == 128);
}

TEST_CASE("enumerate_phylogenetic_trees") {
  CHECK(oracle::enumerate_phylogenetic_trees(2).size() == 1);
  CHECK(oracle::enumerate_phylogenetic_trees(3).size() == 3);
  CHECK(oracle::enumerate_phylogenetic_trees(4).size() == 15);
  CHECK(oracle::enumerate_phylogenetic_trees(5).size() == 105);
  CHECK(oracle::count_phylo_fixed_bruteforce(Permutation::identity(4)) == 15);
  CHECK(oracle::count_phylo_fixed_bruteforce(Permutation::parse("(1,2)", 4)) == 3);
}

TEST_CASE("random_walk_excursion") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t steps = 100 + 2 * rng.below(500);
    const auto path = oracle::random_walk_excursion(steps, rng);
    REQUIRE(path.size() == steps + 1);
    CHECK(path.front() == 0.0);
    CHECK(std::abs(path.back()) < 1e-12);
    const double unit = 1 / std::sqrt(static_cast<double>(steps));
    for (std::size_t k = 0; k < steps; ++k) {
      CHECK(path[k] >= -1e-12);
      CHECK(std::abs(std::abs(path[k + 1] - path[k]) - unit) < 1e-12);
    }
  }
  // Sample area mean against the exact finite-size mean, which in turn
  // approaches sqrt(pi/8) at rate 1/sqrt(steps).
  const double limit = std::sqrt(std::acos(-1.0) / 8);
  const double exact = exact_dyck_area_mean(4000);
  CHECK(std::abs(exact - limit) < 0.02);
  // The bias is c/sqrt(steps); extrapolating from steps = 1000 removes it.
  CHECK(std::abs(2 * exact - exact_dyck_area_mean(1000) - limit) < 1e-3);
  double sum = 0, sq = 0;
  const int paths = 4000;
  for (int i = 0; i < paths; ++i) {
    const double a = oracle::excursion_area(oracle::random_walk_excursion(4000, rng));
    sum += a;
    sq += a * a;
  }
  const double mean = sum / paths;
  const double se = std::sqrt((sq / paths - mean * mean) / paths);
  CHECK(std::abs(mean - exact) < 4 * se);
  CHECK_THROWS_AS(oracle::random_walk_excursion(99, rng), Error);
  CHECK_THROWS_AS(oracle::random_walk_excursion(101, rng), Error);
}
