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

#include "polyatree/invariance.hpp"

#include <string>
#include <vector>

#include "polyatree/error.hpp"

namespace polyatree {

bool is_invariant(const RootedForest& t, const Permutation& s) {
  if (t.size() != s.size()) {
    fail(Errc::size_mismatch, "tree has " + std::to_string(t.size()) +
                                  " vertices, permutation acts on " + std::to_string(s.size()));
  }
  for (Vertex v = 1; v <= t.size(); ++v) {
    const Vertex p = t.parent(v);
    const Vertex image_parent = t.parent(s(v));
    if (p == 0 ? image_parent != 0 : image_parent != s(p)) return false;
  }
  return true;
}

RootedTree quotient(const RootedTree& t, const Permutation& s) {
  if (s.size() > 0 && !s.fixes(1)) fail(Errc::not_fixing_one, "permutation moves the root");
  if (!is_invariant(t, s)) fail(Errc::not_invariant, "tree is not invariant under " + s.to_string());
  std::vector<Vertex> parent(s.cycle_count(), 0);
  for (std::size_t i = 1; i < s.cycle_count(); ++i) {
    const Vertex representative = s.cycle(i)[0];
    parent[i] = s.cycle_of(t.parent(representative)) + 1;
  }
  return RootedTree::from_parents(parent);
}

BigCount lift_count(const RootedTree& q, const Permutation& s) {
  if (q.size() != s.cycle_count()) {
    fail(Errc::size_mismatch, "quotient size differs from the number of cycles");
  }
  BigCount count = 1;
  for (Vertex c = 2; c <= q.size(); ++c) {
    const std::uint32_t child_length = s.cycle_length(c - 1);
    const std::uint32_t parent_length = s.cycle_length(q.parent(c) - 1);
    if (child_length % parent_length != 0) return 0;
    count *= parent_length;
  }
  return count;
}

}  // namespace polyatree
