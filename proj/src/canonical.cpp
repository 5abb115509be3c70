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

#include "polyatree/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "polyatree/error.hpp"
#include "polyatree/rng.hpp"

namespace polyatree {

void CanonicalWorkspace::compute_inumbers(const RootedTree& t,
                                          std::vector<std::uint32_t>* root_code) {
  const std::size_t n = t.size();
  level_order(t, levels_);
  inumber_.assign(n + 1, 0);
  list_offset_.resize(2 * (n + 1));
  if (root_code) root_code->clear();
  const auto& order = levels_.order;
  // list_offset_[2v] is the offset of v's child list, list_offset_[2v+1] its length.
  for (std::size_t level = levels_.level_start.size() - 1; level-- > 0;) {
    const std::uint32_t begin = levels_.level_start[level];
    const std::uint32_t end = levels_.level_start[level + 1];
    internal_.clear();
    list_data_.clear();
    for (std::uint32_t i = begin; i < end; ++i) {
      const Vertex v = order[i];
      if (t.is_leaf(v)) continue;
      const auto offset = static_cast<std::uint32_t>(list_data_.size());
      for (Vertex c = t.firstborn(v); c != 0; c = t.next_sibling(c)) {
        list_data_.push_back(inumber_[c]);
      }
      const auto length = static_cast<std::uint32_t>(list_data_.size()) - offset;
      if (length > 1) std::sort(list_data_.begin() + offset, list_data_.end());
      list_offset_[2 * v] = offset;
      list_offset_[2 * v + 1] = length;
      internal_.push_back(v);
    }
    const std::uint32_t* data = list_data_.data();
    auto list_of = [&](Vertex v) {
      return std::span<const std::uint32_t>(data + list_offset_[2 * v], list_offset_[2 * v + 1]);
    };
    std::sort(internal_.begin(), internal_.end(), [&](Vertex a, Vertex b) {
      auto la = list_of(a);
      auto lb = list_of(b);
      return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
    });
    std::uint32_t rank = 0;
    std::span<const std::uint32_t> previous;
    for (std::size_t k = 0; k < internal_.size(); ++k) {
      const Vertex v = internal_[k];
      auto current = list_of(v);
      if (k == 0 || !std::equal(current.begin(), current.end(), previous.begin(), previous.end())) {
        ++rank;
      }
      inumber_[v] = rank;
      previous = current;
    }
    if (root_code) {
      root_code->push_back(end - begin);
      root_code->push_back(end - begin - static_cast<std::uint32_t>(internal_.size()));
      for (Vertex v : internal_) {
        auto l = list_of(v);
        root_code->push_back(static_cast<std::uint32_t>(l.size()));
        root_code->insert(root_code->end(), l.begin(), l.end());
      }
    }
  }
}

namespace {

// Open-addressing map from (parent orbit, i-number) to orbit id.
std::uint32_t lookup_or_insert(std::vector<std::uint64_t>& keys, std::vector<std::uint32_t>& vals,
                               std::uint64_t key, std::uint32_t fresh, bool& inserted) {
  const std::size_t mask = keys.size() - 1;
  std::size_t slot = mix64(key) & mask;
  const std::uint64_t stored = key + 1;
  for (;;) {
    if (keys[slot] == stored) {
      inserted = false;
      return vals[slot];
    }
    if (keys[slot] == 0) {
      keys[slot] = stored;
      vals[slot] = fresh;
      inserted = true;
      return fresh;
    }
    slot = (slot + 1) & mask;
  }
}

}  // namespace

void CanonicalWorkspace::compute_orbits(const RootedTree& t) {
  const std::size_t n = t.size();
  orbit_.assign(n + 1, 0);
  std::size_t capacity = 16;
  while (capacity < 2 * n) capacity <<= 1;
  orbit_keys_.assign(capacity, 0);
  orbit_vals_.resize(capacity);
  orbit_count_ = 1;
  orbit_[1] = 0;
  stack_.clear();
  stack_.push_back(1);
  // Explicit preorder; children are pushed in reverse so they pop in chain order.
  std::vector<Vertex>& scratch = internal_;
  while (!stack_.empty()) {
    const Vertex u = stack_.back();
    stack_.pop_back();
    if (u != 1) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(orbit_[t.parent(u)]) << 32) | inumber_[u];
      bool inserted = false;
      orbit_[u] = lookup_or_insert(orbit_keys_, orbit_vals_, key, orbit_count_, inserted);
      if (inserted) ++orbit_count_;
    }
    scratch.clear();
    for (Vertex c = t.firstborn(u); c != 0; c = t.next_sibling(c)) scratch.push_back(c);
    stack_.insert(stack_.end(), scratch.rbegin(), scratch.rend());
  }
}

double CanonicalWorkspace::log_aut(const RootedTree& t) {
  const std::size_t n = t.size();
  if (log_factorial_.size() < n + 1) {
    const std::size_t old = log_factorial_.size();
    log_factorial_.resize(n + 1);
    if (old == 0) log_factorial_[0] = 0.0;
    for (std::size_t k = std::max<std::size_t>(old, 1); k <= n; ++k) {
      log_factorial_[k] = log_factorial_[k - 1] + std::log(static_cast<double>(k));
    }
  }
  double total = 0.0;
  std::vector<std::uint32_t>& buf = list_data_;
  for (Vertex v : levels_.order) {
    if (t.is_leaf(v) || t.next_sibling(t.firstborn(v)) == 0) continue;
    buf.clear();
    for (Vertex c = t.firstborn(v); c != 0; c = t.next_sibling(c)) buf.push_back(inumber_[c]);
    std::sort(buf.begin(), buf.end());
    std::size_t run = 1;
    for (std::size_t k = 1; k <= buf.size(); ++k) {
      if (k < buf.size() && buf[k] == buf[k - 1]) {
        ++run;
      } else {
        if (run > 1) total += log_factorial_[run];
        run = 1;
      }
    }
  }
  return total;
}

CanonicalCode ahu_canonical(const RootedTree& t) {
  CanonicalWorkspace ws;
  CanonicalCode code;
  ws.compute_inumbers(t, &code.root_code);
  code.inumber.assign(ws.inumbers().begin(), ws.inumbers().end());
  return code;
}

AutomorphismPartition automorphism_partition(const RootedTree& t) {
  CanonicalWorkspace ws;
  ws.compute_inumbers(t);
  ws.compute_orbits(t);
  return {std::vector<std::uint32_t>(ws.orbits().begin(), ws.orbits().end()), ws.orbit_count()};
}

AutomorphismPartition automorphism_partition(const RootedTree& t, const CanonicalCode& code) {
  if (code.inumber.size() != t.size() + 1) {
    fail(Errc::size_mismatch, "canonical code does not belong to this tree");
  }
  // Preorder walk keyed by (parent orbit, i-number); same rule as the workspace.
  AutomorphismPartition p;
  p.orbit.assign(t.size() + 1, 0);
  p.orbit_count = 1;
  std::vector<std::uint64_t> keys(16);
  while (keys.size() < 2 * t.size()) keys.resize(keys.size() * 2);
  std::fill(keys.begin(), keys.end(), 0);
  std::vector<std::uint32_t> vals(keys.size());
  std::vector<Vertex> stack{1};
  std::vector<Vertex> kids;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    if (u != 1) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(p.orbit[t.parent(u)]) << 32) | code.inumber[u];
      bool inserted = false;
      p.orbit[u] = lookup_or_insert(keys, vals, key, p.orbit_count, inserted);
      if (inserted) ++p.orbit_count;
    }
    kids.clear();
    for (Vertex c : t.children(u)) kids.push_back(c);
    stack.insert(stack.end(), kids.rbegin(), kids.rend());
  }
  return p;
}

double log_aut_size(const RootedTree& t) {
  CanonicalWorkspace ws;
  ws.compute_inumbers(t);
  return ws.log_aut(t);
}

BigCount aut_size(const RootedTree& t) {
  if (t.size() > 10000) fail(Errc::size_cap, "exact automorphism count is capped at 10^4 vertices");
  CanonicalWorkspace ws;
  ws.compute_inumbers(t);
  const auto inum = ws.inumbers();
  BigCount result = 1;
  std::vector<std::uint32_t> buf;
  for (Vertex v = 1; v <= t.size(); ++v) {
    buf.clear();
    for (Vertex c : t.children(v)) buf.push_back(inum[c]);
    std::sort(buf.begin(), buf.end());
    std::uint32_t run = 1;
    for (std::size_t k = 1; k <= buf.size(); ++k) {
      if (k < buf.size() && buf[k] == buf[k - 1]) {
        ++run;
      } else {
        for (std::uint32_t f = 2; f <= run; ++f) result *= f;
        run = 1;
      }
    }
  }
  return result;
}

}  // namespace polyatree
