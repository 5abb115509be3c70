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
#include <string>
#include <string_view>
#include <vector>

#include "polyatree/forest.hpp"
#include "polyatree/permutation.hpp"
#include "polyatree/rng.hpp"

namespace polyatree {

// ---------------------------------------------------------------------------
// Classical Prüfer codes for trees on [n] rooted at 1.
//
// Encoding repeatedly removes the lowest leaf (the root never counts as a
// leaf) and records its neighbour; the final removal always records 1 and is
// dropped, leaving n-2 entries. Vertex i occurs (degree(i) - 1) times.
// ---------------------------------------------------------------------------

std::vector<Vertex> cayley_encode(const RootedTree& t);
// code.size() must be n-2 (empty for n = 1, 2). Throws Error(out_of_range),
// Error(size_mismatch).
RootedTree cayley_decode(std::span<const Vertex> code, std::size_t n);
RootedTree sample_cayley(std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Decorated sequences: forests on [m] with a label on every edge (stored on
// the child endpoint) and a label on every root.
// ---------------------------------------------------------------------------

// target > 0: the removed vertex hung below `target` on an edge labelled
// `label`. target == 0: the removed vertex was a root labelled `label`.
struct DecoratedEntry {
  Vertex target = 0;
  std::uint32_t label = 0;

  friend bool operator==(const DecoratedEntry&, const DecoratedEntry&) = default;
};

using DecoratedPruferSeq = std::vector<DecoratedEntry>;

struct DecoratedForest {
  RootedForest forest;
  std::vector<std::uint32_t> label;  // indexed by vertex: edge label, or root label for roots

  std::uint32_t edge_label(Vertex v) const { return label[v]; }
  std::uint32_t root_label(Vertex r) const { return label[r]; }

  friend bool operator==(const DecoratedForest&, const DecoratedForest&) = default;
};

// Throws Error(malformed_sequence) if the last entry is not a root entry or a
// target lies outside 1..m.
DecoratedForest prufer_decode_decorated(std::span<const DecoratedEntry> seq);
DecoratedPruferSeq prufer_encode_decorated(const DecoratedForest& f);

// ---------------------------------------------------------------------------
// sigma-Prüfer sequences: one block per cycle length d of sigma. The d = 1
// block has lambda_1 - 1 entries among the fixed points, ending in 1; a d >= 2
// block has lambda_d entries in Lambda_d = {i : sigma^d(i) = i}, the last of
// period strictly dividing d.
// ---------------------------------------------------------------------------

struct SigmaPruferBlock {
  std::uint32_t cycle_length = 0;
  std::vector<Vertex> entries;

  friend bool operator==(const SigmaPruferBlock&, const SigmaPruferBlock&) = default;
};

struct SigmaPruferSeq {
  std::vector<SigmaPruferBlock> blocks;  // increasing cycle length

  std::size_t length() const;
  // "(4,4,1|6,4,1|2|18,10)"
  std::string to_string() const;
  // Inverse of to_string. Blocks take the distinct cycle lengths of s in
  // increasing order. Throws Error(malformed_sequence) on bad syntax or a
  // block count that does not match s.
  static SigmaPruferSeq parse(std::string_view text, const Permutation& s);

  friend bool operator==(const SigmaPruferSeq&, const SigmaPruferSeq&) = default;
};

// Throws Error(not_fixing_one), Error(not_invariant).
SigmaPruferSeq sigma_prufer_encode(const RootedTree& t, const Permutation& s);
// Throws Error(block_constraint).
RootedTree sigma_prufer_decode(const SigmaPruferSeq& seq, const Permutation& s);

// Extended variant for s-invariant rooted forests on [n] (s arbitrary): a
// virtual vertex 0 is fixed and every root is hung from it. Entries may then
// be 0; the d = 1 block has lambda_1 entries and ends in 0.
SigmaPruferSeq extended_sigma_prufer_encode(const RootedForest& f, const Permutation& s);
RootedForest extended_sigma_prufer_decode(const SigmaPruferSeq& seq, const Permutation& s);

namespace detail {

// Algorithm-1 decoding into caller-owned arrays (indexed by vertex, slot 0
// unused). parent[v] == 0 marks a root. Used by the sampler's inner loop.
void decode_decorated(std::span<const DecoratedEntry> seq, std::vector<Vertex>& parent,
                      std::vector<std::uint32_t>& label, std::vector<Vertex>& heap);

// Classical decoding into parent (size n+1, slot 0 unused).
void decode_cayley(std::span<const Vertex> code, std::size_t n, std::vector<Vertex>& parent,
                   std::vector<std::uint32_t>& degree, std::vector<Vertex>& heap);

}  // namespace detail

}  // namespace polyatree
