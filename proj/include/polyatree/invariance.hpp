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

#include "polyatree/bigcount.hpp"
#include "polyatree/forest.hpp"
#include "polyatree/permutation.hpp"

namespace polyatree {

// True iff s maps every edge of t to an edge. Since s fixes the root this is
// parent(s(v)) == s(parent(v)) for all v. Throws Error(size_mismatch).
bool is_invariant(const RootedForest& t, const Permutation& s);

// The tree T/s on the cycles of s: quotient vertex i+1 is cycle i of s (cycles
// ordered by minimum, so the root cycle {1} is vertex 1), and cycle(a) is a
// child of cycle(b) iff a is a child of b in t.
// Throws Error(not_fixing_one), Error(not_invariant).
RootedTree quotient(const RootedTree& t, const Permutation& s);

// Number of s-invariant trees whose quotient is q: every non-root cycle can be
// attached to its parent cycle in (parent cycle length) rotations.
BigCount lift_count(const RootedTree& q, const Permutation& s);

}  // namespace polyatree
