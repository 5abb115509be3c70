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

// Fixtures shared by the unit tests and the acceptance binary.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "polyatree/forest.hpp"
#include "polyatree/permutation.hpp"
#include "polyatree/rng.hpp"

namespace polyatree::testing {

inline RootedTree tree_from(std::vector<Vertex> parent) { return RootedTree::from_parents(parent); }

// 1 -> 2,3; 2 -> 4,5; 3 -> 6,7.
inline RootedTree full_binary7() { return tree_from({0, 1, 1, 2, 2, 3, 3}); }

// The 25-vertex worked example, invariant under sigma25().
inline RootedTree tree25() {
  std::vector<Vertex> p(25, 0);
  auto set = [&](Vertex v, Vertex parent) { p[v - 1] = parent; };
  set(4, 1);
  set(9, 1);
  set(10, 1);
  for (Vertex v : {2, 3, 5, 6}) set(v, 4);
  set(8, 5);
  set(7, 6);
  for (Vertex v : {11, 12, 13}) set(v, 2);
  for (Vertex i = 0; i < 6; ++i) {
    set(14 + i, i % 2 == 0 ? 10 : 9);
    set(20 + (2 + i) % 6, 14 + i);
  }
  return tree_from(p);
}

inline Permutation sigma25() {
  return Permutation::parse("(5,6)(7,8)(9,10)(11,12,13)(14,15,16,17,18,19)(20,21,22,23,24,25)", 25);
}

// Every permutation of [n] fixing 1, in lexicographic order of images.
inline std::vector<Permutation> all_perms_fixing_one(std::size_t n) {
  std::vector<Vertex> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Vertex>(i + 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin() + 1, img.end()));
  return out;
}

// Random recursive tree on [n] rooted at 1 over a shuffled labelling. Not
// uniform over trees; it only feeds property tests.
inline RootedTree random_recursive_tree(std::size_t n, Rng& rng) {
  std::vector<Vertex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Vertex>(i + 1);
  for (std::size_t i = n - 1; i > 1; --i) {
    const std::size_t j = 1 + rng.below(i);
    std::swap(order[i], order[j]);
  }
  std::vector<Vertex> p(n, 0);
  for (std::size_t i = 1; i < n; ++i) p[order[i] - 1] = order[rng.below(i)];
  return tree_from(p);
}

}  // namespace polyatree::testing
