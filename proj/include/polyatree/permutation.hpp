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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyatree/forest.hpp"

namespace polyatree {

// Cycle type of a permutation: lambda[d] counts the d-cycles, and
// mu[d] = sum over proper divisors e of d of e * lambda[e], the number of
// points whose period strictly divides d.
struct CycleIndex {
  std::map<std::uint32_t, std::uint32_t> lambda;
  std::map<std::uint32_t, std::uint64_t> mu;

  static CycleIndex from_lambda(std::map<std::uint32_t, std::uint32_t> lambda);

  std::uint32_t count(std::uint32_t d) const;
  std::uint64_t strict_divisor_points(std::uint32_t d) const;  // mu_d
  std::uint64_t divisor_points(std::uint32_t d) const;         // mu_d + d * lambda_d
  std::size_t degree() const;                                  // sum d * lambda_d
};

// A bijection of 1..n. Cycles are listed by increasing minimum, each one
// starting at its minimum and following the permutation.
class Permutation {
 public:
  Permutation() : Permutation(identity(0)) {}

  static Permutation identity(std::size_t n);
  // image[i] is the image of i+1. Throws Error(invalid_argument) if not a bijection.
  static Permutation from_images(std::span<const Vertex> image);
  // Unlisted points are fixed.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Vertex>>& cycles);
  // Cycle notation such as "(2,3)(4,5,6)"; "()" or "" is the identity.
  static Permutation parse(std::string_view text, std::size_t n);
  // Representative of a cycle type fixing 1: the fixed points come first, then
  // cycles on consecutive integers in increasing length. lambda[1] >= 1.
  static Permutation from_cycle_type(const std::map<std::uint32_t, std::uint32_t>& lambda);

  std::size_t size() const noexcept { return image_.size() - 1; }
  Vertex operator()(Vertex v) const { return image_[v]; }
  std::span<const Vertex> images() const { return {image_.data() + 1, size()}; }
  bool fixes(Vertex v) const { return image_[v] == v; }
  bool is_identity() const { return cycle_count() == size(); }

  std::size_t cycle_count() const noexcept { return cycle_start_.size() - 1; }
  std::span<const Vertex> cycle(std::size_t i) const {
    return {cycle_vertices_.data() + cycle_start_[i], cycle_start_[i + 1] - cycle_start_[i]};
  }
  std::uint32_t cycle_length(std::size_t i) const { return cycle_start_[i + 1] - cycle_start_[i]; }
  // Index of the cycle containing v, and v's position in it.
  std::uint32_t cycle_of(Vertex v) const { return cycle_of_[v]; }
  std::uint32_t position_in_cycle(Vertex v) const { return position_[v]; }
  std::uint32_t period(Vertex v) const { return cycle_length(cycle_of_[v]); }

  const CycleIndex& cycle_type() const noexcept { return type_; }

  Permutation inverse() const;
  // (a * b)(v) = a(b(v)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.image_ == b.image_;
  }

  // Cycle notation without fixed points; "()" for the identity.
  std::string to_string() const;

 private:
  explicit Permutation(std::vector<Vertex> image_with_sentinel);

  std::vector<Vertex> image_;
  std::vector<Vertex> cycle_vertices_;
  std::vector<std::uint32_t> cycle_start_;
  std::vector<std::uint32_t> cycle_of_;
  std::vector<std::uint32_t> position_;
  CycleIndex type_;
};

}  // namespace polyatree
