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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace polyatree {

// Vertices are numbered 1..n; 0 means "none" (no parent, no child, no sibling).
using Vertex = std::uint32_t;

// A rooted forest on 1..n stored as three integer lists: parent (0 for
// roots), firstborn (0 for leaves) and next sibling (0 for the last child).
// Children of each vertex are chained in increasing vertex order.
class RootedForest {
 public:
  class ChildIterator {
   public:
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;

    ChildIterator() = default;
    ChildIterator(const RootedForest* forest, Vertex v) : forest_(forest), v_(v) {}

    Vertex operator*() const { return v_; }
    ChildIterator& operator++() {
      v_ = forest_->next_sibling(v_);
      return *this;
    }
    ChildIterator operator++(int) {
      ChildIterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const ChildIterator& other) const { return v_ == other.v_; }

   private:
    const RootedForest* forest_ = nullptr;
    Vertex v_ = 0;
  };

  struct ChildRange {
    ChildIterator first;
    ChildIterator begin() const { return first; }
    ChildIterator end() const { return {}; }
  };

  // The empty forest.
  RootedForest() = default;

  // parent[i] is the parent of vertex i+1, or 0 if i+1 is a root.
  // Throws Error(cycle_detected) or Error(out_of_range).
  static RootedForest from_parents(std::span<const Vertex> parent);

  std::size_t size() const noexcept { return parent_.size() - 1; }

  Vertex parent(Vertex v) const { return parent_[v]; }
  Vertex firstborn(Vertex v) const { return firstborn_[v]; }
  Vertex next_sibling(Vertex v) const { return nextsib_[v]; }
  bool is_root(Vertex v) const { return parent_[v] == 0; }
  bool is_leaf(Vertex v) const { return firstborn_[v] == 0; }
  ChildRange children(Vertex v) const { return {ChildIterator(this, firstborn_[v])}; }
  std::size_t child_count(Vertex v) const;

  // Parent list of length n (index v-1 holds the parent of v).
  std::span<const Vertex> parents() const { return {parent_.data() + 1, size()}; }
  std::vector<Vertex> roots() const;

  // True when there is exactly one root and it is vertex 1.
  bool is_tree_rooted_at_one() const;

  friend bool operator==(const RootedForest& a, const RootedForest& b) {
    return a.parent_ == b.parent_;
  }

 protected:
  // Index 0 is a sentinel slot so that vertices index directly.
  std::vector<Vertex> parent_{0};
  std::vector<Vertex> firstborn_{0};
  std::vector<Vertex> nextsib_{0};
};

// A RootedForest with exactly one root, equal to vertex 1.
class RootedTree : public RootedForest {
 public:
  // The single-vertex tree.
  RootedTree();

  // Throws Error(root_not_one), Error(multiple_roots) if the forest is not a
  // tree rooted at 1.
  explicit RootedTree(RootedForest forest);

  static RootedTree from_parents(std::span<const Vertex> parent);

  // Height-1 tree: every vertex 2..n is a child of 1.
  static RootedTree star(std::size_t n);
  // 1 - 2 - ... - n.
  static RootedTree path(std::size_t n);

  // Rebuilds in place from parent (slot 0 unused) without validation, reusing
  // storage. The caller guarantees a tree on [n] rooted at 1.
  void assign_trusted(std::span<const Vertex> parent);
};

// Validating constructor of the parent-list format.
RootedTree build_tree(std::span<const Vertex> parent);

// Vertices of a tree rooted at 1 in breadth-first order (children in chain
// order) with the offsets at which each depth starts.
struct LevelOrder {
  std::vector<Vertex> order;
  std::vector<std::uint32_t> level_start;  // level k occupies [level_start[k], level_start[k+1])
  std::vector<std::uint32_t> depth;        // indexed by vertex, slot 0 unused

  std::size_t height() const { return level_start.size() - 2; }
};

LevelOrder level_order(const RootedTree& t);
void level_order(const RootedTree& t, LevelOrder& out);

// Parent-list text format: a line holding n, then n whitespace-separated
// integers (0 for the root). Returns nullopt at end of input.
std::optional<RootedTree> read_parent_list(std::istream& in);
void write_parent_list(std::ostream& out, const RootedForest& f);

}  // namespace polyatree
