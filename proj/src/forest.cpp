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

#include "polyatree/forest.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "polyatree/error.hpp"

namespace polyatree {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::cycle_detected: return "cycle detected";
    case Errc::multiple_roots: return "multiple roots";
    case Errc::root_not_one: return "root is not vertex 1";
    case Errc::size_mismatch: return "size mismatch";
    case Errc::not_invariant: return "tree not invariant";
    case Errc::not_fixing_one: return "permutation does not fix 1";
    case Errc::out_of_range: return "value out of range";
    case Errc::malformed_sequence: return "malformed sequence";
    case Errc::block_constraint: return "block constraint violation";
    case Errc::inconsistent_partition: return "partition inconsistent with tree";
    case Errc::numeric_failure: return "numeric failure";
    case Errc::size_cap: return "size cap exceeded";
  }
  return "unknown error";
}

RootedForest RootedForest::from_parents(std::span<const Vertex> parent) {
  const std::size_t n = parent.size();
  RootedForest f;
  f.parent_.assign(n + 1, 0);
  f.firstborn_.assign(n + 1, 0);
  f.nextsib_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] > n) {
      fail(Errc::out_of_range, "parent of vertex " + std::to_string(i + 1) +
                                   " is " + std::to_string(parent[i]) +
                                   ", outside 0.." + std::to_string(n));
    }
    f.parent_[i + 1] = parent[i];
  }
  // Walk every vertex towards its root, colouring the path; meeting a vertex
  // on the current path means a cycle.
  std::vector<std::uint8_t> state(n + 1, 0);  // 0 new, 1 on path, 2 done
  std::vector<Vertex> path;
  for (Vertex start = 1; start <= n; ++start) {
    Vertex v = start;
    path.clear();
    while (v != 0 && state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = f.parent_[v];
    }
    if (v != 0 && state[v] == 1) {
      fail(Errc::cycle_detected, "cycle detected through vertex " + std::to_string(v));
    }
    for (Vertex w : path) state[w] = 2;
  }
  // Descending insertion leaves every chain in increasing order.
  for (auto v = static_cast<Vertex>(n); v >= 1; --v) {
    const Vertex p = f.parent_[v];
    if (p != 0) {
      f.nextsib_[v] = f.firstborn_[p];
      f.firstborn_[p] = v;
    }
  }
  return f;
}

std::size_t RootedForest::child_count(Vertex v) const {
  std::size_t c = 0;
  for (Vertex w = firstborn_[v]; w != 0; w = nextsib_[w]) ++c;
  return c;
}

std::vector<Vertex> RootedForest::roots() const {
  std::vector<Vertex> r;
  for (Vertex v = 1; v <= size(); ++v) {
    if (parent_[v] == 0) r.push_back(v);
  }
  return r;
}

bool RootedForest::is_tree_rooted_at_one() const {
  if (size() == 0 || parent_[1] != 0) return false;
  for (Vertex v = 2; v <= size(); ++v) {
    if (parent_[v] == 0) return false;
  }
  return true;
}

RootedTree::RootedTree() {
  parent_.assign(2, 0);
  firstborn_.assign(2, 0);
  nextsib_.assign(2, 0);
}

RootedTree::RootedTree(RootedForest forest) : RootedForest(std::move(forest)) {
  if (size() == 0) fail(Errc::invalid_argument, "a tree needs at least one vertex");
  std::size_t root_count = 0;
  for (Vertex v = 1; v <= size(); ++v) {
    if (parent_[v] == 0) ++root_count;
  }
  if (parent_[1] != 0) fail(Errc::root_not_one, "vertex 1 is not a root");
  if (root_count > 1) {
    fail(Errc::multiple_roots, std::to_string(root_count) + " roots, expected 1");
  }
}

RootedTree RootedTree::from_parents(std::span<const Vertex> parent) {
  return RootedTree(RootedForest::from_parents(parent));
}

RootedTree RootedTree::star(std::size_t n) {
  std::vector<Vertex> parent(n, 1);
  if (n > 0) parent[0] = 0;
  return from_parents(parent);
}

RootedTree RootedTree::path(std::size_t n) {
  std::vector<Vertex> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<Vertex>(i);
  return from_parents(parent);
}

void RootedTree::assign_trusted(std::span<const Vertex> parent) {
  const std::size_t n = parent.size() - 1;
  parent_.assign(parent.begin(), parent.end());
  parent_[0] = 0;
  firstborn_.assign(n + 1, 0);
  nextsib_.resize(n + 1);
  for (auto v = static_cast<Vertex>(n); v >= 1; --v) {
    const Vertex p = parent_[v];
    nextsib_[v] = firstborn_[p];
    firstborn_[p] = v;
  }
  nextsib_[1] = 0;
  firstborn_[0] = 0;
}

RootedTree build_tree(std::span<const Vertex> parent) {
  return RootedTree::from_parents(parent);
}

void level_order(const RootedTree& t, LevelOrder& out) {
  const std::size_t n = t.size();
  out.order.resize(n);
  out.depth.assign(n + 1, 0);
  out.level_start.clear();
  out.level_start.push_back(0);
  out.order[0] = 1;
  std::size_t head = 0;
  std::size_t tail = 1;
  std::uint32_t current = 0;
  while (head < tail) {
    const Vertex u = out.order[head];
    if (out.depth[u] != current) {
      out.level_start.push_back(static_cast<std::uint32_t>(head));
      current = out.depth[u];
    }
    ++head;
    for (Vertex c = t.firstborn(u); c != 0; c = t.next_sibling(c)) {
      out.depth[c] = out.depth[u] + 1;
      out.order[tail++] = c;
    }
  }
  out.level_start.push_back(static_cast<std::uint32_t>(n));
}

LevelOrder level_order(const RootedTree& t) {
  LevelOrder lo;
  level_order(t, lo);
  return lo;
}

std::optional<RootedTree> read_parent_list(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n)) {
    if (in.eof()) return std::nullopt;
    fail(Errc::malformed_sequence, "expected a vertex count");
  }
  std::vector<Vertex> parent(n);
  for (std::size_t i = 0; i < n; ++i) {
    long long value = 0;
    if (!(in >> value)) {
      fail(Errc::malformed_sequence, "parent list truncated after " + std::to_string(i) +
                                         " of " + std::to_string(n) + " entries");
    }
    if (value < 0 || static_cast<unsigned long long>(value) > n) {
      fail(Errc::out_of_range, "parent value " + std::to_string(value) + " out of range");
    }
    parent[i] = static_cast<Vertex>(value);
  }
  return RootedTree::from_parents(parent);
}

void write_parent_list(std::ostream& out, const RootedForest& f) {
  out << f.size() << '\n';
  bool first = true;
  for (Vertex p : f.parents()) {
    if (!first) out << ' ';
    out << p;
    first = false;
  }
  out << '\n';
}

}  // namespace polyatree
