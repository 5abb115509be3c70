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

#include "polyatree/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "polyatree/error.hpp"

namespace polyatree::oracle {

namespace {

void cap(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    fail(Errc::size_cap, std::string(what) + " is capped at n = " + std::to_string(limit));
  }
}

// parent[0] unused; parent[v] == 0 marks a root.
bool acyclic(const std::vector<Vertex>& parent) {
  const std::size_t n = parent.size() - 1;
  for (Vertex v = 1; v <= n; ++v) {
    Vertex w = v;
    for (std::size_t steps = 0; w != 0; ++steps) {
      if (steps > n) return false;
      w = parent[w];
    }
  }
  return true;
}

// Advances digits (each in [lo, hi]) like an odometer; false after the last.
bool advance(std::vector<Vertex>& digits, std::size_t from, Vertex lo, Vertex hi) {
  for (std::size_t i = digits.size(); i-- > from;) {
    if (digits[i] < hi) {
      ++digits[i];
      return true;
    }
    digits[i] = lo;
  }
  return false;
}

}  // namespace

std::vector<RootedTree> enumerate_trees(std::size_t n) {
  cap(n, 8, "enumerate_trees");
  if (n == 0) fail(Errc::invalid_argument, "n must be positive");
  std::vector<RootedTree> out;
  std::vector<Vertex> parent(n + 1, 1);
  parent[0] = 0;
  parent[1] = 0;
  do {
    if (acyclic(parent)) {
      out.push_back(RootedTree::from_parents(std::span<const Vertex>(parent).subspan(1)));
    }
  } while (advance(parent, 2, 1, static_cast<Vertex>(n)));
  return out;
}

std::vector<RootedTree> enumerate_invariant_trees(const Permutation& s) {
  std::vector<RootedTree> out;
  for (auto& t : enumerate_trees(s.size())) {
    bool ok = true;
    for (Vertex v = 1; v <= t.size() && ok; ++v) {
      const Vertex p = t.parent(v);
      ok = t.parent(s(v)) == (p == 0 ? 0 : s(p));
    }
    if (ok) out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<Vertex>> enumerate_automorphisms(const RootedTree& t) {
  const std::size_t n = t.size();
  cap(n, 8, "enumerate_automorphisms");
  std::vector<Vertex> image(n + 1);
  std::iota(image.begin(), image.end(), Vertex{0});
  std::vector<std::vector<Vertex>> out;
  do {
    bool ok = true;
    for (Vertex v = 2; v <= n && ok; ++v) ok = t.parent(image[v]) == image[t.parent(v)];
    if (ok) out.push_back(image);
  } while (std::next_permutation(image.begin() + 2, image.end()));
  return out;
}

std::vector<std::vector<Vertex>> enumerate_commuting_functions(const Permutation& s) {
  const std::size_t n = s.size();
  cap(n, 5, "enumerate_commuting_functions");
  std::vector<std::vector<Vertex>> out;
  if (n == 0) return out;
  std::vector<Vertex> f(n + 1, 1);
  f[0] = 0;
  do {
    bool ok = true;
    for (Vertex v = 1; v <= n && ok; ++v) ok = f[s(v)] == s(f[v]);
    if (ok) out.push_back(f);
  } while (advance(f, 1, 1, static_cast<Vertex>(n)));
  return out;
}

std::vector<std::vector<Vertex>> enumerate_forests(std::size_t m) {
  cap(m, 7, "enumerate_forests");
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> parent(m + 1, 0);
  do {
    bool self = false;
    for (Vertex v = 1; v <= m; ++v) self |= parent[v] == v;
    if (!self && acyclic(parent)) out.emplace_back(parent.begin() + 1, parent.end());
  } while (advance(parent, 1, 0, static_cast<Vertex>(m)));
  return out;
}

BigCount count_decorated_forests(std::size_t m, std::uint64_t x, std::uint64_t y) {
  BigCount total = 0;
  for (const auto& parent : enumerate_forests(m)) {
    BigCount term = 1;
    for (Vertex p : parent) term *= p == 0 ? y : x;
    total += term;
  }
  return total;
}

namespace {

// Canonical string of the subtree at `node`, with leaves relabelled by `label`.
std::string phylo_form(const PhyloTree& t, std::size_t n, std::uint32_t node,
                       const std::vector<std::uint32_t>& label) {
  if (node <= n) return std::to_string(label[node]);
  const auto [a, b] = t.children[node - n - 1];
  std::string x = phylo_form(t, n, a, label);
  std::string y = phylo_form(t, n, b, label);
  if (y < x) std::swap(x, y);
  return "(" + x + "," + y + ")";
}

std::string phylo_form(const PhyloTree& t, std::size_t n, const std::vector<std::uint32_t>& label) {
  return phylo_form(t, n, static_cast<std::uint32_t>(2 * n - 1), label);
}

}  // namespace

std::vector<PhyloTree> enumerate_phylogenetic_trees(std::size_t n) {
  cap(n, 6, "enumerate_phylogenetic_trees");
  if (n < 2) fail(Errc::invalid_argument, "phylogenetic trees need at least 2 leaves");
  // Insert leaves one at a time above every existing node (leaves are 1..k,
  // internal nodes get ids from 100), then renumber and deduplicate.
  std::set<std::string> seen;
  std::vector<PhyloTree> out;
  struct State {
    std::map<std::uint32_t, std::uint32_t> parent;  // node -> parent (0 for root)
    std::uint32_t next_internal;
  };
  std::vector<State> states;
  {
    State s;
    s.parent[1] = 100;
    s.parent[2] = 100;
    s.parent[100] = 0;
    s.next_internal = 101;
    states.push_back(s);
  }
  for (std::uint32_t leaf = 3; leaf <= n; ++leaf) {
    std::vector<State> next;
    for (const auto& s : states) {
      for (const auto& [node, par] : s.parent) {
        State t = s;
        const std::uint32_t mid = t.next_internal++;
        t.parent[mid] = par;
        t.parent[node] = mid;
        t.parent[leaf] = mid;
        next.push_back(std::move(t));
      }
    }
    states = std::move(next);
  }
  std::vector<std::uint32_t> identity(n + 1);
  std::iota(identity.begin(), identity.end(), 0u);
  for (const auto& s : states) {
    // Renumber internal nodes in post-order so every child precedes its parent.
    std::map<std::uint32_t, std::vector<std::uint32_t>> kids;
    std::uint32_t root = 0;
    for (const auto& [node, par] : s.parent) {
      if (par == 0) {
        root = node;
      } else {
        kids[par].push_back(node);
      }
    }
    PhyloTree t;
    std::map<std::uint32_t, std::uint32_t> id;
    std::uint32_t fresh = static_cast<std::uint32_t>(n) + 1;
    std::vector<std::pair<std::uint32_t, bool>> stack{{root, false}};
    t.children.resize(n - 1);
    while (!stack.empty()) {
      auto [node, expanded] = stack.back();
      stack.pop_back();
      if (node <= n) continue;
      if (!expanded) {
        stack.push_back({node, true});
        for (auto c : kids[node]) stack.push_back({c, false});
        continue;
      }
      const auto& ch = kids[node];
      auto map_id = [&](std::uint32_t c) { return c <= n ? c : id.at(c); };
      id[node] = fresh;
      t.children[fresh - n - 1] = {map_id(ch[0]), map_id(ch[1])};
      ++fresh;
    }
    if (seen.insert(phylo_form(t, n, identity)).second) out.push_back(std::move(t));
  }
  return out;
}

std::uint64_t count_phylo_fixed_bruteforce(const Permutation& s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> identity(n + 1), moved(n + 1);
  std::iota(identity.begin(), identity.end(), 0u);
  for (Vertex v = 1; v <= n; ++v) moved[v] = s(v);
  std::uint64_t count = 0;
  for (const auto& t : enumerate_phylogenetic_trees(n)) {
    if (phylo_form(t, n, identity) == phylo_form(t, n, moved)) ++count;
  }
  return count;
}

std::vector<double> random_walk_excursion(std::size_t steps, Rng& rng) {
  if (steps < 100 || steps % 2 != 0) {
    fail(Errc::invalid_argument, "excursion needs an even number of steps >= 100");
  }
  const std::size_t m = steps / 2;
  // m up-steps and m+1 down-steps in uniform order.
  std::vector<int> seq(steps + 1, -1);
  std::fill(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(m), 1);
  for (std::size_t i = seq.size() - 1; i > 0; --i) std::swap(seq[i], seq[rng.below(i + 1)]);
  // The unique rotation whose proper prefix sums stay >= 0 starts right after
  // the first position where the prefix sum reaches its minimum.
  long sum = 0;
  long best = 1;
  std::size_t cut = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    sum += seq[i];
    if (sum < best) {
      best = sum;
      cut = i + 1;
    }
  }
  std::vector<double> path(steps + 1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(steps));
  long h = 0;
  path[0] = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    h += seq[(cut + i) % seq.size()];
    path[i + 1] = static_cast<double>(h) * scale;
  }
  return path;
}

double excursion_max(const std::vector<double>& path) {
  return path.empty() ? 0.0 : *std::max_element(path.begin(), path.end());
}

double excursion_area(const std::vector<double>& path) {
  if (path.size() < 2) return 0.0;
  double sum = 0;
  for (double v : path) sum += v;
  return sum / static_cast<double>(path.size() - 1);
}

}  // namespace polyatree::oracle
