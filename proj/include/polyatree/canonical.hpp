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
#include <span>
#include <vector>

#include "polyatree/bigcount.hpp"
#include "polyatree/forest.hpp"

namespace polyatree {

// AHU canonical form of a rooted tree.
//
// inumber[v] is the rank of v's sorted list of child i-numbers among the
// distinct lists occurring at v's depth, ordered lexicographically, with the
// empty list (leaves) always ranked 0. root_code lists, from the deepest level
// up to the root, the level size, the leaf count and then every non-empty
// child list in sorted order (length followed by entries). Two trees are
// isomorphic iff their root codes are equal.
struct CanonicalCode {
  std::vector<std::uint32_t> inumber;  // indexed by vertex, slot 0 unused
  std::vector<std::uint32_t> root_code;
};

// Orbits of Aut(t) on the vertices. Ids are dense and assigned in first-visit
// order of a preorder traversal, so the root is orbit 0.
struct AutomorphismPartition {
  std::vector<std::uint32_t> orbit;  // indexed by vertex, slot 0 unused
  std::uint32_t orbit_count = 0;
};

CanonicalCode ahu_canonical(const RootedTree& t);

// Two vertices share an orbit iff their root-to-vertex i-number lists agree.
AutomorphismPartition automorphism_partition(const RootedTree& t);
AutomorphismPartition automorphism_partition(const RootedTree& t, const CanonicalCode& code);

// Natural log of |Aut(t)|: the sum, over vertices, of log(k!) for every class
// of k isomorphic child subtrees.
double log_aut_size(const RootedTree& t);
// Exact |Aut(t)|. Throws Error(size_cap) above 10^4 vertices.
BigCount aut_size(const RootedTree& t);

// Scratch buffers for repeated i-number and orbit computations on trees of
// similar size; used by the sampler's inner loop.
class CanonicalWorkspace {
 public:
  // Fills inumbers() and levels().
  void compute_inumbers(const RootedTree& t, std::vector<std::uint32_t>* root_code = nullptr);
  // Requires compute_inumbers on the same tree. Fills orbits().
  void compute_orbits(const RootedTree& t);
  // Requires compute_inumbers on the same tree.
  double log_aut(const RootedTree& t);

  std::span<const std::uint32_t> inumbers() const { return inumber_; }
  std::span<const std::uint32_t> orbits() const { return orbit_; }
  std::uint32_t orbit_count() const { return orbit_count_; }
  const LevelOrder& levels() const { return levels_; }

 private:
  LevelOrder levels_;
  std::vector<std::uint32_t> inumber_;
  std::vector<std::uint32_t> orbit_;
  std::uint32_t orbit_count_ = 0;
  std::vector<std::uint32_t> list_offset_;
  std::vector<std::uint32_t> list_data_;
  std::vector<Vertex> internal_;
  std::vector<Vertex> stack_;
  std::vector<std::uint64_t> orbit_keys_;
  std::vector<std::uint32_t> orbit_vals_;
  std::vector<double> log_factorial_;
};

}  // namespace polyatree
