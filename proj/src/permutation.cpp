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

#include "polyatree/permutation.hpp"

#include <cctype>
#include <numeric>
#include <string>

#include "polyatree/error.hpp"

namespace polyatree {

CycleIndex CycleIndex::from_lambda(std::map<std::uint32_t, std::uint32_t> lambda) {
  CycleIndex ci;
  for (auto [d, count] : lambda) {
    if (count > 0) ci.lambda[d] = count;
  }
  for (auto [d, count] : ci.lambda) {
    std::uint64_t m = 0;
    for (auto [e, le] : ci.lambda) {
      if (e >= d) break;
      if (d % e == 0) m += static_cast<std::uint64_t>(e) * le;
    }
    ci.mu[d] = m;
  }
  return ci;
}

std::uint32_t CycleIndex::count(std::uint32_t d) const {
  auto it = lambda.find(d);
  return it == lambda.end() ? 0 : it->second;
}

std::uint64_t CycleIndex::strict_divisor_points(std::uint32_t d) const {
  auto it = mu.find(d);
  if (it != mu.end()) return it->second;
  std::uint64_t m = 0;
  for (auto [e, le] : lambda) {
    if (e >= d) break;
    if (d % e == 0) m += static_cast<std::uint64_t>(e) * le;
  }
  return m;
}

std::uint64_t CycleIndex::divisor_points(std::uint32_t d) const {
  return strict_divisor_points(d) + static_cast<std::uint64_t>(d) * count(d);
}

std::size_t CycleIndex::degree() const {
  std::size_t n = 0;
  for (auto [d, count] : lambda) n += static_cast<std::size_t>(d) * count;
  return n;
}

Permutation::Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
  const std::size_t n = image_.size() - 1;
  cycle_of_.assign(n + 1, 0);
  position_.assign(n + 1, 0);
  cycle_vertices_.reserve(n);
  cycle_start_.assign(1, 0);
  std::vector<bool> seen(n + 1, false);
  std::map<std::uint32_t, std::uint32_t> lambda;
  for (Vertex v = 1; v <= n; ++v) {
    if (seen[v]) continue;
    const auto index = static_cast<std::uint32_t>(cycle_start_.size() - 1);
    std::uint32_t pos = 0;
    Vertex w = v;
    do {
      seen[w] = true;
      cycle_of_[w] = index;
      position_[w] = pos++;
      cycle_vertices_.push_back(w);
      w = image_[w];
    } while (w != v);
    cycle_start_.push_back(static_cast<std::uint32_t>(cycle_vertices_.size()));
    ++lambda[pos];
  }
  type_ = CycleIndex::from_lambda(std::move(lambda));
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> image(n + 1);
  std::iota(image.begin(), image.end(), Vertex{0});
  return Permutation(std::move(image));
}

Permutation Permutation::from_images(std::span<const Vertex> image) {
  const std::size_t n = image.size();
  std::vector<Vertex> full(n + 1, 0);
  std::vector<bool> hit(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex w = image[i];
    if (w < 1 || w > n) {
      fail(Errc::invalid_argument, "image " + std::to_string(w) + " outside 1.." + std::to_string(n));
    }
    if (hit[w]) fail(Errc::invalid_argument, "image " + std::to_string(w) + " repeated");
    hit[w] = true;
    full[i + 1] = w;
  }
  return Permutation(std::move(full));
}

Permutation Permutation::from_cycles(std::size_t n,
                                     const std::vector<std::vector<Vertex>>& cycles) {
  std::vector<Vertex> image(n + 1);
  std::iota(image.begin(), image.end(), Vertex{0});
  std::vector<bool> used(n + 1, false);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Vertex v = c[k];
      if (v < 1 || v > n) {
        fail(Errc::invalid_argument, "cycle entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
      }
      if (used[v]) fail(Errc::invalid_argument, "vertex " + std::to_string(v) + " in two cycles");
      used[v] = true;
      image[v] = c[(k + 1) % c.size()];
    }
  }
  return Permutation(std::move(image));
}

Permutation Permutation::parse(std::string_view text, std::size_t n) {
  std::vector<std::vector<Vertex>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') {
      fail(Errc::invalid_argument, "expected '(' in cycle notation \"" + std::string(text) + "\"");
    }
    ++i;
    std::vector<Vertex> cycle;
    for (;;) {
      skip_space();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
        fail(Errc::invalid_argument, "malformed cycle notation \"" + std::string(text) + "\"");
      }
      unsigned long long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<unsigned>(text[i] - '0');
        if (value > 0xffffffffULL) fail(Errc::invalid_argument, "cycle entry too large");
        ++i;
      }
      cycle.push_back(static_cast<Vertex>(value));
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_space();
  }
  return from_cycles(n, cycles);
}

Permutation Permutation::from_cycle_type(const std::map<std::uint32_t, std::uint32_t>& lambda) {
  auto fixed = lambda.find(1);
  if (fixed == lambda.end() || fixed->second == 0) {
    fail(Errc::not_fixing_one, "cycle type has no fixed point, so no representative fixes 1");
  }
  std::size_t n = 0;
  for (auto [d, count] : lambda) {
    if (d == 0) fail(Errc::invalid_argument, "cycle length 0");
    n += static_cast<std::size_t>(d) * count;
  }
  std::vector<std::vector<Vertex>> cycles;
  Vertex next = 1;
  for (auto [d, count] : lambda) {
    for (std::uint32_t c = 0; c < count; ++c) {
      std::vector<Vertex> cycle(d);
      for (auto& v : cycle) v = next++;
      cycles.push_back(std::move(cycle));
    }
  }
  return from_cycles(n, cycles);
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(image_.size(), 0);
  for (Vertex v = 1; v <= size(); ++v) inv[image_[v]] = v;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) fail(Errc::size_mismatch, "composing permutations of different sizes");
  std::vector<Vertex> image(a.image_.size(), 0);
  for (Vertex v = 1; v <= a.size(); ++v) image[v] = a(b(v));
  return Permutation(std::move(image));
}

std::string Permutation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < cycle_count(); ++i) {
    if (cycle_length(i) == 1) continue;
    s += '(';
    bool first = true;
    for (Vertex v : cycle(i)) {
      if (!first) s += ',';
      s += std::to_string(v);
      first = false;
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

}  // namespace polyatree
