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
#include <vector>

#include "polyatree/bigcount.hpp"
#include "polyatree/forest.hpp"
#include "polyatree/permutation.hpp"
#include "polyatree/rng.hpp"

namespace polyatree::oracle {

// Deliberately naive reference enumerations. Size caps throw Error(size_cap).

// All trees on [n] rooted at 1 (n <= 8), by filtering every parent map
// {2..n} -> [n] for acyclicity. Parent lists come out in lexicographic order.
std::vector<RootedTree> enumerate_trees(std::size_t n);

// Members of enumerate_trees(n) invariant under s (n <= 8).
std::vector<RootedTree> enumerate_invariant_trees(const Permutation& s);

// Automorphisms of t (n <= 8) as image arrays (slot 0 unused), by filtering
// all permutations fixing 1.
std::vector<std::vector<Vertex>> enumerate_automorphisms(const RootedTree& t);

// Functions [n] -> [n] commuting with s (n <= 5), as image arrays (slot 0 unused).
std::vector<std::vector<Vertex>> enumerate_commuting_functions(const Permutation& s);

// Rooted forests on [m] (m <= 7) as parent lists, 0 marking roots.
std::vector<std::vector<Vertex>> enumerate_forests(std::size_t m);
// sum over forests on [m] of x^(edges) y^(roots).
BigCount count_decorated_forests(std::size_t m, std::uint64_t x, std::uint64_t y);

// Rooted binary trees with leaves labelled 1..n (n <= 6), each in a canonical
// nested-pair form.
struct PhyloTree {
  // Internal nodes are n+1 .. 2n-1; children[i] holds the two children of
  // internal node n+1+i. Node 2n-1 is the root.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> children;
};
std::vector<PhyloTree> enumerate_phylogenetic_trees(std::size_t n);
// Number of those trees mapped to themselves by relabelling leaves via s.
std::uint64_t count_phylo_fixed_bruteforce(const Permutation& s);

// Uniform Dyck path of `steps` (even, >= 100) +-1 steps, scaled by
// 1/sqrt(steps); entry i is the height after i steps. Drawn exactly with the
// cycle lemma.
std::vector<double> random_walk_excursion(std::size_t steps, Rng& rng);
double excursion_max(const std::vector<double>& path);
// Riemann sum of the path over [0, 1].
double excursion_area(const std::vector<double>& path);

}  // namespace polyatree::oracle
