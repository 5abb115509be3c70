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

#include "polyatree/burnside.hpp"

#include <algorithm>
#include <string>

#include "polyatree/error.hpp"
#include "polyatree/prufer.hpp"

namespace polyatree {

namespace {

// Fills image (slot 0 unused) with a uniform automorphism. Two children of
// the same parent are exchangeable iff their keys agree (orbit ids, or
// i-numbers, which carry the same information among siblings). `order` must
// list the vertices in breadth-first order.
void draw_automorphism(const RootedTree& t, std::span<const std::uint32_t> key,
                       std::span<const Vertex> order, Rng& rng, std::vector<Vertex>& image,
                       std::vector<std::uint32_t>& start, std::vector<std::uint64_t>& slots,
                       std::vector<std::uint64_t>& from) {
  const std::size_t n = t.size();
  // Children of u occupy slots[start[u] .. start[u+1]), grouped by key.
  start.assign(n + 2, 0);
  for (Vertex v = 2; v <= n; ++v) ++start[t.parent(v) + 1];
  for (std::size_t u = 1; u <= n; ++u) start[u + 1] += start[u];
  slots.resize(n);
  for (Vertex u = 1; u <= n; ++u) {
    std::uint32_t pos = start[u];
    for (Vertex c = t.firstborn(u); c != 0; c = t.next_sibling(c)) {
      slots[pos++] = (static_cast<std::uint64_t>(key[c]) << 32) | c;
    }
    auto first = slots.begin() + start[u];
    auto last = slots.begin() + pos;
    if (pos - start[u] > 1 && !std::is_sorted(first, last)) std::sort(first, last);
  }
  image.assign(n + 1, 0);
  image[1] = 1;
  for (Vertex u : order) {
    const std::uint32_t a0 = start[u];
    const std::uint32_t a1 = start[u + 1];
    if (a0 == a1) continue;
    const Vertex fu = image[u];
    const std::uint32_t b0 = start[fu];
    if (start[fu + 1] - b0 != a1 - a0) {
      fail(Errc::inconsistent_partition, "orbit partition does not match the tree");
    }
    // Copy u's slice first: it is the same slice as f(u)'s when f(u) = u.
    from.assign(slots.begin() + a0, slots.begin() + a1);
    std::uint32_t i = 0;
    const std::uint32_t len = a1 - a0;
    while (i < len) {
      const std::uint64_t group = from[i] >> 32;
      std::uint32_t end = i;
      while (end < len && (from[end] >> 32) == group) ++end;
      for (std::uint32_t k = i; k < end; ++k) {
        if ((slots[b0 + k] >> 32) != group) {
          fail(Errc::inconsistent_partition, "orbit partition does not match the tree");
        }
        if (end - k > 1) std::swap(slots[b0 + k], slots[b0 + k + rng.below(end - k)]);
        image[static_cast<Vertex>(from[k])] = static_cast<Vertex>(slots[b0 + k]);
      }
      i = end;
    }
  }
}

// Choice-vector encoding of the trees invariant under a fixed permutation.
class InvariantBuilder {
 public:
  void prepare(std::span<const Vertex> image) {
    n_ = image.size() - 1;
    if (n_ == 0) fail(Errc::invalid_argument, "permutation is empty");
    if (image[1] != 1) fail(Errc::not_fixing_one, "permutation must fix the root 1");
    seen_.assign(n_ + 1, 0);
    verts_.clear();
    start_.assign(1, 0);
    for (Vertex v = 1; v <= n_; ++v) {
      if (seen_[v]) continue;
      Vertex w = v;
      do {
        seen_[w] = 1;
        verts_.push_back(w);
        w = image[w];
      } while (w != v);
      start_.push_back(static_cast<std::uint32_t>(verts_.size()));
    }
    const std::size_t cycles = start_.size() - 1;
    count_.assign(n_ + 2, 0);
    for (std::size_t c = 0; c < cycles; ++c) ++count_[start_[c + 1] - start_[c]];
    lengths_.clear();
    group_start_.clear();
    std::uint32_t offset = 0;
    for (std::uint32_t d = 1; d <= n_; ++d) {
      if (count_[d] == 0) continue;
      lengths_.push_back(d);
      group_start_.push_back(offset);
      const std::uint32_t c = count_[d];
      count_[d] = offset;  // becomes the write cursor
      offset += c;
    }
    group_start_.push_back(offset);
    grouped_.resize(cycles);
    for (std::size_t c = 0; c < cycles; ++c) {
      grouped_[count_[start_[c + 1] - start_[c]]++] = static_cast<std::uint32_t>(c);
    }
    mu_.assign(lengths_.size(), 0);
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (lengths_[i] % lengths_[j] == 0) {
          mu_[i] += static_cast<std::uint64_t>(lengths_[j]) * lambda(j);
        }
      }
    }
  }

  void bounds(std::vector<std::uint64_t>& out) const {
    out.clear();
    const std::uint64_t l1 = lambda(0);
    for (std::uint64_t i = 2; i < l1; ++i) out.push_back(l1);
    for (std::size_t i = 1; i < lengths_.size(); ++i) {
      const std::uint64_t m = lambda(i);
      for (std::uint64_t k = 1; k < m; ++k) out.push_back(lengths_[i] * m + mu_[i]);
      out.push_back(mu_[i]);
    }
  }

  // draw(bound) must return a value in [0, bound).
  template <class Draw>
  void build(Draw&& draw, std::vector<Vertex>& parent) {
    parent.assign(n_ + 1, 0);
    // Fixed points: classical code on their increasing enumeration.
    const std::uint32_t l1 = lambda(0);
    if (l1 >= 2) {
      code_.resize(l1 - 2);
      for (auto& a : code_) a = static_cast<Vertex>(draw(l1) + 1);
      detail::decode_cayley(code_, l1, tparent_, deg_, heap_);
      for (std::uint32_t i = 2; i <= l1; ++i) {
        parent[fixed_point(i - 1)] = fixed_point(tparent_[i] - 1);
      }
    }
    for (std::size_t li = 1; li < lengths_.size(); ++li) {
      const std::uint32_t d = lengths_[li];
      const std::uint32_t m = lambda(li);
      const std::uint64_t edges = static_cast<std::uint64_t>(d) * m;
      const std::uint64_t width = edges + mu_[li];
      seq_.resize(m);
      for (std::uint32_t k = 0; k + 1 < m; ++k) {
        const std::uint64_t w = draw(width);
        if (w < edges) {
          seq_[k] = {static_cast<Vertex>(w / d + 1), static_cast<std::uint32_t>(w % d)};
        } else {
          seq_[k] = {0, static_cast<std::uint32_t>(w - edges)};
        }
      }
      seq_[m - 1] = {0, static_cast<std::uint32_t>(draw(mu_[li]))};
      detail::decode_decorated(seq_, tparent_, dlabel_, heap_);
      for (std::uint32_t j = 1; j <= m; ++j) {
        const Vertex* child = cycle_in_group(li, j - 1);
        const std::uint32_t lab = dlabel_[j];
        if (tparent_[j] != 0) {
          const Vertex* up = cycle_in_group(li, tparent_[j] - 1);
          for (std::uint32_t k = 0; k < d; ++k) parent[child[(k + lab) % d]] = up[k];
        } else {
          // Root label indexes the points of strictly dividing period.
          std::uint64_t y = lab;
          for (std::size_t e = 0; e < li; ++e) {
            const std::uint32_t len = lengths_[e];
            if (d % len != 0) continue;
            const std::uint64_t block = static_cast<std::uint64_t>(len) * lambda(e);
            if (y >= block) {
              y -= block;
              continue;
            }
            const Vertex* up = cycle_in_group(e, static_cast<std::uint32_t>(y / len));
            const auto jpos = static_cast<std::uint32_t>(y % len);
            for (std::uint32_t k = 0; k < d; ++k) parent[child[k]] = up[(k + jpos) % len];
            break;
          }
        }
      }
    }
  }

 private:
  std::uint32_t lambda(std::size_t li) const { return group_start_[li + 1] - group_start_[li]; }
  const Vertex* cycle_in_group(std::size_t li, std::uint32_t idx) const {
    return verts_.data() + start_[grouped_[group_start_[li] + idx]];
  }
  Vertex fixed_point(std::uint32_t idx) const { return *cycle_in_group(0, idx); }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> seen_;
  std::vector<Vertex> verts_;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> lengths_;
  std::vector<std::uint32_t> group_start_;
  std::vector<std::uint32_t> grouped_;
  std::vector<std::uint64_t> mu_;
  std::vector<Vertex> code_;
  std::vector<Vertex> tparent_;
  std::vector<std::uint32_t> deg_;
  std::vector<std::uint32_t> dlabel_;
  std::vector<Vertex> heap_;
  std::vector<DecoratedEntry> seq_;
};

std::vector<Vertex> sentinel_images(const Permutation& s) {
  std::vector<Vertex> image(s.size() + 1, 0);
  for (Vertex v = 1; v <= s.size(); ++v) image[v] = s(v);
  return image;
}

auto rng_draw(Rng& rng) {
  return [&rng](std::uint64_t bound) -> std::uint64_t {
    return bound <= 1 ? 0 : rng.below(bound);
  };
}

RootedTree tree_from(const std::vector<Vertex>& parent) {
  return RootedTree::from_parents(std::span<const Vertex>(parent).subspan(1));
}

}  // namespace

Permutation uniform_automorphism(const RootedTree& t, const AutomorphismPartition& partition,
                                 Rng& rng) {
  if (partition.orbit.size() != t.size() + 1) {
    fail(Errc::size_mismatch, "orbit partition does not belong to this tree");
  }
  const LevelOrder levels = level_order(t);
  std::vector<Vertex> image;
  std::vector<std::uint32_t> start;
  std::vector<std::uint64_t> slots, from;
  draw_automorphism(t, partition.orbit, levels.order, rng, image, start, slots, from);
  return Permutation::from_images(std::span<const Vertex>(image).subspan(1));
}

Permutation uniform_automorphism(const RootedTree& t, Rng& rng) {
  return uniform_automorphism(t, automorphism_partition(t), rng);
}

std::vector<std::uint64_t> invariant_tree_choice_bounds(const Permutation& s) {
  InvariantBuilder builder;
  builder.prepare(sentinel_images(s));
  std::vector<std::uint64_t> out;
  builder.bounds(out);
  return out;
}

RootedTree build_invariant_tree(const Permutation& s, std::span<const std::uint64_t> choices) {
  InvariantBuilder builder;
  builder.prepare(sentinel_images(s));
  std::size_t pos = 0;
  auto draw = [&](std::uint64_t bound) -> std::uint64_t {
    if (pos >= choices.size()) fail(Errc::size_mismatch, "choice vector too short");
    const std::uint64_t c = choices[pos++];
    if (c >= bound) {
      fail(Errc::out_of_range, "choice " + std::to_string(c) + " at position " +
                                   std::to_string(pos - 1) + " exceeds bound " +
                                   std::to_string(bound));
    }
    return c;
  };
  std::vector<Vertex> parent;
  builder.build(draw, parent);
  if (pos != choices.size()) fail(Errc::size_mismatch, "choice vector too long");
  return tree_from(parent);
}

RootedTree uniform_invariant_tree(const Permutation& s, Rng& rng) {
  InvariantBuilder builder;
  builder.prepare(sentinel_images(s));
  std::vector<Vertex> parent;
  builder.build(rng_draw(rng), parent);
  return tree_from(parent);
}

RootedTree burnside_step(const RootedTree& t, Rng& rng) {
  BurnsideChain chain(t);
  chain.step(rng);
  return chain.tree();
}

struct BurnsideChain::Scratch {
  CanonicalWorkspace canon;
  InvariantBuilder builder;
  std::vector<Vertex> image;
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> start;
  std::vector<std::uint64_t> slots;
  std::vector<std::uint64_t> from;
};

BurnsideChain::BurnsideChain(RootedTree initial)
    : tree_(std::move(initial)), scratch_(std::make_unique<Scratch>()) {}
BurnsideChain::~BurnsideChain() = default;
BurnsideChain::BurnsideChain(BurnsideChain&&) noexcept = default;
BurnsideChain& BurnsideChain::operator=(BurnsideChain&&) noexcept = default;

void BurnsideChain::step(Rng& rng) {
  Scratch& s = *scratch_;
  s.canon.compute_inumbers(tree_);
  draw_automorphism(tree_, s.canon.inumbers(), s.canon.levels().order, rng, s.image, s.start,
                    s.slots, s.from);
  s.builder.prepare(s.image);
  s.builder.build(rng_draw(rng), s.parent);
  tree_.assign_trusted(s.parent);
}

void BurnsideChain::run(std::size_t steps, Rng& rng) {
  for (std::size_t i = 0; i < steps; ++i) step(rng);
}

std::span<const Vertex> BurnsideChain::last_automorphism() const { return scratch_->image; }

RootedTree sample_polya(std::size_t n, Rng& rng, std::size_t burnin) {
  if (n == 0) fail(Errc::invalid_argument, "tree size must be positive");
  BurnsideChain chain(RootedTree::star(n));
  chain.run(burnin, rng);
  return chain.tree();
}

RootedTree sample_polya(const ChainConfig& config) {
  Rng rng(config.seed);
  if (config.initial) {
    if (config.initial->size() != config.n) {
      fail(Errc::size_mismatch, "initial tree size differs from n");
    }
    BurnsideChain chain(*config.initial);
    chain.run(config.burnin, rng);
    return chain.tree();
  }
  return sample_polya(config.n, rng, config.burnin);
}

std::vector<TreeStats> chain_trace(const ChainConfig& config, std::size_t steps, Rng& rng) {
  if (config.n == 0) fail(Errc::invalid_argument, "tree size must be positive");
  if (config.initial && config.initial->size() != config.n) {
    fail(Errc::size_mismatch, "initial tree size differs from n");
  }
  BurnsideChain chain(config.initial ? *config.initial : RootedTree::star(config.n));
  StatsWorkspace ws;
  std::vector<TreeStats> out;
  out.reserve(steps + 1);
  out.push_back(ws.compute(chain.tree()));
  for (std::size_t i = 0; i < steps; ++i) {
    chain.step(rng);
    out.push_back(ws.compute(chain.tree()));
  }
  return out;
}

}  // namespace polyatree
