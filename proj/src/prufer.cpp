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

#include "polyatree/prufer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <string>

#include "polyatree/error.hpp"
#include "polyatree/invariance.hpp"

namespace polyatree {

namespace {

// Min-heap over vertex (or cycle) numbers; keys are distinct.
inline void heap_push(std::vector<Vertex>& heap, Vertex v) {
  heap.push_back(v);
  std::push_heap(heap.begin(), heap.end(), std::greater<>{});
}

inline Vertex heap_pop(std::vector<Vertex>& heap) {
  std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
  const Vertex v = heap.back();
  heap.pop_back();
  return v;
}

}  // namespace

std::vector<Vertex> cayley_encode(const RootedTree& t) {
  const std::size_t n = t.size();
  if (n <= 2) return {};
  std::vector<std::uint32_t> remaining(n + 1, 0);
  std::vector<Vertex> heap;
  for (Vertex v = 1; v <= n; ++v) {
    remaining[v] = static_cast<std::uint32_t>(t.child_count(v));
    if (v != 1 && remaining[v] == 0) heap_push(heap, v);
  }
  std::vector<Vertex> code;
  code.reserve(n - 2);
  for (std::size_t step = 0; step + 2 < n; ++step) {
    const Vertex leaf = heap_pop(heap);
    const Vertex p = t.parent(leaf);
    code.push_back(p);
    if (--remaining[p] == 0 && p != 1) heap_push(heap, p);
  }
  return code;
}

namespace detail {

void decode_cayley(std::span<const Vertex> code, std::size_t n, std::vector<Vertex>& parent,
                   std::vector<std::uint32_t>& degree, std::vector<Vertex>& heap) {
  parent.assign(n + 1, 0);
  if (n <= 1) return;
  degree.assign(n + 1, 1);
  for (Vertex a : code) ++degree[a];
  ++degree[1];  // implicit final entry
  (void)heap;
  // Linear-time lowest-leaf decoding: `cursor` scans for the next fresh
  // leaf; a vertex that becomes a leaf below the cursor is used at once.
  Vertex cursor = 2;
  while (degree[cursor] != 1) ++cursor;
  Vertex leaf = cursor;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vertex a = i < code.size() ? code[i] : 1;
    parent[leaf] = a;
    degree[leaf] = 0;
    if (--degree[a] == 1 && a < cursor && a != 1) {
      leaf = a;
    } else if (i + 2 < n) {
      do {
        ++cursor;
      } while (degree[cursor] != 1);
      leaf = cursor;
    }
  }
}

void decode_decorated(std::span<const DecoratedEntry> seq, std::vector<Vertex>& parent,
                      std::vector<std::uint32_t>& label, std::vector<Vertex>& heap) {
  const std::size_t m = seq.size();
  parent.assign(m + 1, 0);
  label.assign(m + 1, 1);
  if (m == 0) return;
  if (seq.back().target != 0) {
    fail(Errc::malformed_sequence, "decorated sequence must end with a root entry");
  }
  // label[] holds degrees until a vertex is removed; after that it is never
  // referenced as a target again, so its slot takes the entry label.
  for (const auto& e : seq) {
    if (e.target > m) {
      fail(Errc::malformed_sequence, "entry target " + std::to_string(e.target) +
                                         " outside 0.." + std::to_string(m));
    }
    if (e.target != 0) ++label[e.target];
  }
  heap.clear();
  for (Vertex v = 1; v <= m; ++v) {
    if (label[v] == 1) heap.push_back(v);
  }
  std::make_heap(heap.begin(), heap.end(), std::greater<>{});
  for (const auto& e : seq) {
    if (heap.empty()) fail(Errc::malformed_sequence, "no leaf available while decoding");
    const Vertex k = heap_pop(heap);
    label[k] = e.label;
    if (e.target != 0) {
      parent[k] = e.target;
      if (--label[e.target] == 1) heap_push(heap, e.target);
    }
  }
}

}  // namespace detail

RootedTree cayley_decode(std::span<const Vertex> code, std::size_t n) {
  if (n == 0) fail(Errc::invalid_argument, "tree size must be positive");
  const std::size_t expected = n >= 2 ? n - 2 : 0;
  if (code.size() != expected) {
    fail(Errc::size_mismatch, "code of length " + std::to_string(code.size()) + " for n = " +
                                  std::to_string(n) + ", expected " + std::to_string(expected));
  }
  for (Vertex a : code) {
    if (a < 1 || a > n) {
      fail(Errc::out_of_range, "code entry " + std::to_string(a) + " outside 1.." +
                                   std::to_string(n));
    }
  }
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> degree;
  std::vector<Vertex> heap;
  detail::decode_cayley(code, n, parent, degree, heap);
  return RootedTree::from_parents(std::span<const Vertex>(parent).subspan(1));
}

RootedTree sample_cayley(std::size_t n, Rng& rng) {
  if (n == 0) fail(Errc::invalid_argument, "tree size must be positive");
  std::vector<Vertex> code(n >= 2 ? n - 2 : 0);
  for (auto& a : code) a = static_cast<Vertex>(rng.below(n) + 1);
  return cayley_decode(code, n);
}

DecoratedForest prufer_decode_decorated(std::span<const DecoratedEntry> seq) {
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> label;
  std::vector<Vertex> heap;
  detail::decode_decorated(seq, parent, label, heap);
  DecoratedForest out;
  out.forest = RootedForest::from_parents(std::span<const Vertex>(parent).subspan(1));
  out.label = std::move(label);
  out.label[0] = 0;
  return out;
}

DecoratedPruferSeq prufer_encode_decorated(const DecoratedForest& f) {
  const std::size_t m = f.forest.size();
  if (f.label.size() != m + 1) fail(Errc::size_mismatch, "label array does not match forest");
  std::vector<std::uint32_t> remaining(m + 1, 0);
  std::vector<Vertex> heap;
  for (Vertex v = 1; v <= m; ++v) {
    remaining[v] = static_cast<std::uint32_t>(f.forest.child_count(v));
    if (remaining[v] == 0) heap.push_back(v);
  }
  std::make_heap(heap.begin(), heap.end(), std::greater<>{});
  DecoratedPruferSeq seq;
  seq.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex k = heap_pop(heap);
    const Vertex p = f.forest.parent(k);
    seq.push_back({p, f.label[k]});
    if (p != 0 && --remaining[p] == 0) heap_push(heap, p);
  }
  return seq;
}

std::size_t SigmaPruferSeq::length() const {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.entries.size();
  return total;
}

std::string SigmaPruferSeq::to_string() const {
  std::string out = "(";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += '|';
    for (std::size_t i = 0; i < blocks[b].entries.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(blocks[b].entries[i]);
    }
  }
  out += ')';
  return out;
}

namespace {

std::vector<std::uint32_t> distinct_cycle_lengths(const Permutation& s);

}  // namespace

SigmaPruferSeq SigmaPruferSeq::parse(std::string_view text, const Permutation& s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    fail(Errc::malformed_sequence, "expected a parenthesised sequence such as (4,1|6,4)");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<std::string_view> parts;
  for (;;) {
    const auto bar = text.find('|');
    parts.push_back(text.substr(0, bar));
    if (bar == std::string_view::npos) break;
    text.remove_prefix(bar + 1);
  }
  const auto lengths = distinct_cycle_lengths(s);
  if (parts.size() != lengths.size()) {
    fail(Errc::malformed_sequence, std::to_string(parts.size()) + " blocks for a permutation with " +
                                       std::to_string(lengths.size()) + " cycle lengths");
  }
  SigmaPruferSeq seq;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    SigmaPruferBlock block;
    block.cycle_length = lengths[b];
    std::string_view part = trim(parts[b]);
    while (!part.empty()) {
      const auto comma = part.find(',');
      const std::string_view item = trim(part.substr(0, comma));
      Vertex value = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
        fail(Errc::malformed_sequence, "bad entry '" + std::string(item) + "'");
      }
      block.entries.push_back(value);
      if (comma == std::string_view::npos) break;
      part.remove_prefix(comma + 1);
      if (trim(part).empty()) fail(Errc::malformed_sequence, "trailing comma");
    }
    seq.blocks.push_back(std::move(block));
  }
  return seq;
}

namespace {

std::vector<std::uint32_t> distinct_cycle_lengths(const Permutation& s) {
  std::vector<std::uint32_t> lengths;
  for (const auto& [d, count] : s.cycle_type().lambda) {
    if (count) lengths.push_back(d);
  }
  return lengths;
}

std::size_t block_size(std::uint32_t d, std::size_t lambda_d) {
  return d == 1 ? lambda_d - 1 : lambda_d;
}

}  // namespace

SigmaPruferSeq sigma_prufer_encode(const RootedTree& t, const Permutation& s) {
  if (t.size() != s.size()) fail(Errc::size_mismatch, "tree and permutation sizes differ");
  if (!s.fixes(1)) fail(Errc::not_fixing_one, "permutation must fix the root 1");
  if (!is_invariant(t, s)) fail(Errc::not_invariant, "tree is not invariant under the permutation");

  const std::size_t cycles = s.cycle_count();
  const std::uint32_t root_cycle = s.cycle_of(1);
  std::vector<std::uint32_t> remaining(cycles, 0);
  for (std::size_t c = 0; c < cycles; ++c) {
    const Vertex p = t.parent(s.cycle(c)[0]);
    if (p != 0 && s.period(p) == s.cycle_length(c)) ++remaining[s.cycle_of(p)];
  }

  SigmaPruferSeq seq;
  std::vector<Vertex> heap;
  for (std::uint32_t d : distinct_cycle_lengths(s)) {
    heap.clear();
    std::size_t lambda_d = 0;
    for (std::size_t c = 0; c < cycles; ++c) {
      if (s.cycle_length(c) != d) continue;
      ++lambda_d;
      if (remaining[c] == 0 && c != root_cycle) heap.push_back(static_cast<Vertex>(c));
    }
    std::make_heap(heap.begin(), heap.end(), std::greater<>{});
    SigmaPruferBlock block;
    block.cycle_length = d;
    const std::size_t steps = block_size(d, lambda_d);
    block.entries.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
      const Vertex c = heap_pop(heap);
      const Vertex p = t.parent(s.cycle(c)[0]);
      block.entries.push_back(p);
      if (s.period(p) == d) {
        const std::uint32_t pc = s.cycle_of(p);
        if (--remaining[pc] == 0 && pc != root_cycle) heap_push(heap, pc);
      }
    }
    seq.blocks.push_back(std::move(block));
  }
  return seq;
}

RootedTree sigma_prufer_decode(const SigmaPruferSeq& seq, const Permutation& s) {
  const std::size_t n = s.size();
  if (n == 0) fail(Errc::invalid_argument, "permutation is empty");
  if (!s.fixes(1)) fail(Errc::not_fixing_one, "permutation must fix the root 1");
  const auto lengths = distinct_cycle_lengths(s);
  if (seq.blocks.size() != lengths.size()) {
    fail(Errc::block_constraint, "expected " + std::to_string(lengths.size()) + " blocks, got " +
                                     std::to_string(seq.blocks.size()));
  }
  const std::size_t cycles = s.cycle_count();
  const std::uint32_t root_cycle = s.cycle_of(1);
  std::vector<Vertex> parent(n + 1, 0);
  std::vector<std::uint32_t> remaining(cycles, 0);
  std::vector<Vertex> heap;

  for (std::size_t b = 0; b < lengths.size(); ++b) {
    const std::uint32_t d = lengths[b];
    const auto& block = seq.blocks[b];
    const std::string where = "block d=" + std::to_string(d) + ": ";
    if (block.cycle_length != d) {
      fail(Errc::block_constraint, where + "labelled with cycle length " +
                                       std::to_string(block.cycle_length));
    }
    std::size_t lambda_d = 0;
    for (std::size_t c = 0; c < cycles; ++c) {
      if (s.cycle_length(c) == d) ++lambda_d;
    }
    const std::size_t steps = block_size(d, lambda_d);
    if (block.entries.size() != steps) {
      fail(Errc::block_constraint, where + "expected " + std::to_string(steps) + " entries, got " +
                                       std::to_string(block.entries.size()));
    }
    for (std::size_t i = 0; i < steps; ++i) {
      const Vertex p = block.entries[i];
      if (p < 1 || p > n) {
        fail(Errc::out_of_range, where + "entry " + std::to_string(p) + " outside 1.." +
                                     std::to_string(n));
      }
      const std::uint32_t per = s.period(p);
      if (d % per != 0) {
        fail(Errc::block_constraint, where + "entry " + std::to_string(p) + " has period " +
                                         std::to_string(per) + " not dividing " +
                                         std::to_string(d));
      }
      if (i + 1 == steps && (d == 1 ? p != 1 : per == d)) {
        fail(Errc::block_constraint,
             where + (d == 1 ? "last entry must be 1" : "last entry must have smaller period"));
      }
      if (per == d) ++remaining[s.cycle_of(p)];
    }
    heap.clear();
    for (std::size_t c = 0; c < cycles; ++c) {
      if (s.cycle_length(c) == d && remaining[c] == 0 && c != root_cycle) {
        heap.push_back(static_cast<Vertex>(c));
      }
    }
    std::make_heap(heap.begin(), heap.end(), std::greater<>{});
    for (Vertex p : block.entries) {
      if (heap.empty()) fail(Errc::block_constraint, where + "no leaf cycle available");
      const Vertex c = heap_pop(heap);
      Vertex q = p;
      for (Vertex v : s.cycle(c)) {
        parent[v] = q;
        q = s(q);
      }
      if (s.period(p) == d) {
        const std::uint32_t pc = s.cycle_of(p);
        if (--remaining[pc] == 0 && pc != root_cycle) heap_push(heap, pc);
      }
    }
  }
  return RootedTree::from_parents(std::span<const Vertex>(parent).subspan(1));
}

namespace {

Permutation shifted(const Permutation& s) {
  std::vector<Vertex> image(s.size() + 1);
  image[0] = 1;
  for (Vertex v = 1; v <= s.size(); ++v) image[v] = s(v) + 1;
  return Permutation::from_images(image);
}

}  // namespace

SigmaPruferSeq extended_sigma_prufer_encode(const RootedForest& f, const Permutation& s) {
  if (f.size() != s.size()) fail(Errc::size_mismatch, "forest and permutation sizes differ");
  if (!is_invariant(f, s)) fail(Errc::not_invariant, "forest is not invariant under the permutation");
  std::vector<Vertex> parent(f.size() + 1);
  parent[0] = 0;
  for (Vertex v = 1; v <= f.size(); ++v) parent[v] = f.parent(v) + 1;
  const auto tree = RootedTree::from_parents(parent);
  auto seq = sigma_prufer_encode(tree, shifted(s));
  for (auto& b : seq.blocks) {
    for (auto& e : b.entries) e -= 1;
  }
  return seq;
}

RootedForest extended_sigma_prufer_decode(const SigmaPruferSeq& seq, const Permutation& s) {
  SigmaPruferSeq lifted = seq;
  for (auto& b : lifted.blocks) {
    for (auto& e : b.entries) e += 1;
  }
  const auto tree = sigma_prufer_decode(lifted, shifted(s));
  std::vector<Vertex> parent(s.size());
  for (Vertex v = 1; v <= s.size(); ++v) parent[v - 1] = tree.parent(v + 1) - 1;
  return RootedForest::from_parents(parent);
}

}  // namespace polyatree
