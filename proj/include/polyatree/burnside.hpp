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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "polyatree/canonical.hpp"
#include "polyatree/forest.hpp"
#include "polyatree/permutation.hpp"
#include "polyatree/rng.hpp"
#include "polyatree/stats.hpp"

namespace polyatree {

// Uniform element of Aut(t). Vertices are matched top-down: children of u are
// sent to children of f(u) in the same orbit, chosen without replacement.
Permutation uniform_automorphism(const RootedTree& t, const AutomorphismPartition& partition,
                                 Rng& rng);
Permutation uniform_automorphism(const RootedTree& t, Rng& rng);

// Every s-invariant tree on [n] (s fixing 1) corresponds to exactly one
// choice vector c with 0 <= c[i] < bounds[i]; the product of the bounds is the
// number of such trees. Layout: lambda_1 - 2 classical code digits (base
// lambda_1, when lambda_1 >= 3), then for each cycle length d >= 2 in
// increasing order, lambda_d - 1 digits of base d*lambda_d + mu_d and one of
// base mu_d.
std::vector<std::uint64_t> invariant_tree_choice_bounds(const Permutation& s);
// Throws Error(size_mismatch) or Error(out_of_range) on a bad choice vector.
RootedTree build_invariant_tree(const Permutation& s, std::span<const std::uint64_t> choices);
// Uniform s-invariant tree. Throws Error(not_fixing_one).
RootedTree uniform_invariant_tree(const Permutation& s, Rng& rng);

// One Burnside step: a uniform automorphism of t, then a uniform tree
// invariant under it.
RootedTree burnside_step(const RootedTree& t, Rng& rng);

struct ChainConfig {
  std::size_t n = 1;
  std::size_t burnin = 20;
  std::uint64_t seed = 0;
  std::optional<RootedTree> initial;  // default: the star on n vertices
};

// Reusable chain state with scratch buffers, for long runs.
class BurnsideChain {
 public:
  explicit BurnsideChain(RootedTree initial);
  ~BurnsideChain();
  BurnsideChain(BurnsideChain&&) noexcept;
  BurnsideChain& operator=(BurnsideChain&&) noexcept;

  // Replaces the current state, keeping the scratch buffers.
  void reset(RootedTree t) { tree_ = std::move(t); }
  void step(Rng& rng);
  void run(std::size_t steps, Rng& rng);
  const RootedTree& tree() const { return tree_; }
  // Image array (slot 0 unused) of the automorphism drawn by the last step.
  std::span<const Vertex> last_automorphism() const;

 private:
  struct Scratch;
  RootedTree tree_;
  std::unique_ptr<Scratch> scratch_;
};

// Tree after `burnin` steps from the star, using Rng(seed).
RootedTree sample_polya(const ChainConfig& config);
RootedTree sample_polya(std::size_t n, Rng& rng, std::size_t burnin = 20);
// Statistics of the states X_0 .. X_steps of a chain started from
// config.initial (or the star); config.burnin and config.seed are unused.
std::vector<TreeStats> chain_trace(const ChainConfig& config, std::size_t steps, Rng& rng);

}  // namespace polyatree
