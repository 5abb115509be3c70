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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polyatree/canonical.hpp"
#include "polyatree/forest.hpp"

namespace polyatree {

struct TreeStats {
  std::size_t n = 0;
  std::uint32_t height = 0;
  std::uint64_t path_length = 0;
  std::vector<std::uint32_t> profile;      // w_1 .. w_height
  std::uint32_t width = 0;
  std::vector<std::uint32_t> degree_hist;  // index = undirected degree
  std::uint32_t leaf_count = 0;            // vertices without children
  std::uint32_t max_degree = 0;
  std::uint32_t max_out_degree = 0;        // most children of any vertex
  double log_aut = 0;
};

// Degree counts the parent edge for every vertex except the root.
TreeStats compute_stats(const RootedTree& t);

class StatsWorkspace {
 public:
  TreeStats compute(const RootedTree& t);

 private:
  CanonicalWorkspace canon_;
};

// Welford accumulator.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0;
  double m2 = 0;
  double min = 0;
  double max = 0;

  void add(double x);
  void merge(const Moments& other);
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double stddev() const;
};

enum class TreeKind { polya, cayley };
const char* tree_kind_name(TreeKind kind);
// Throws Error(invalid_argument) for anything but "polya" / "cayley".
TreeKind parse_tree_kind(const std::string& name);

struct BatchConfig {
  TreeKind kind = TreeKind::polya;
  std::size_t n = 1;
  std::size_t samples = 1;
  std::size_t burnin = 20;  // ignored for cayley
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Sample i is drawn from Rng(derive_stream_seed(seed, i)), so results do not
// depend on the thread count.
RootedTree generate_tree(const BatchConfig& config, std::size_t index);

struct BatchSummary {
  BatchConfig config;
  Moments height, path_length, width, leaf_count, max_degree, max_out_degree, log_aut;
  // H / sqrt(n), W / sqrt(n), I / n^(3/2), leaves / n, log|Aut| / n
  Moments height_norm, width_norm, path_length_norm, leaf_fraction, log_aut_norm;
  std::map<std::uint32_t, std::uint64_t> height_hist, width_hist, max_degree_hist,
      max_out_degree_hist;
  std::vector<std::uint64_t> degree_total;    // summed degree histograms
  std::vector<double> degree_fraction_sum;    // summed per-tree degree fractions

  // Mean over samples of (#vertices of degree k) / n.
  double degree_fraction(std::size_t k) const;
};

using SampleCallback = std::function<void(std::size_t index, const TreeStats&)>;
using TreeCallback = std::function<void(std::size_t index, const RootedTree&)>;

// Draws config.samples trees on config.threads workers and aggregates them
// in index order. on_sample, if set, is called on the calling thread in
// index order. Throws Error(invalid_argument) for samples == 0 or n == 0.
BatchSummary run_batch(const BatchConfig& config, const SampleCallback& on_sample = {});
// Same sampling, delivering the trees themselves.
void sample_trees(const BatchConfig& config, const TreeCallback& on_tree);

// Mean degree fractions for degrees 1..10.
std::vector<double> degree_fractions(TreeKind kind, std::size_t n, std::size_t samples,
                                     std::uint64_t seed, unsigned threads = 1);

// CSV helpers. Base columns: height,path_length,width,leaf_count,max_degree,log_aut;
// with degree columns: deg1..degK appended.
std::string stats_csv_header(std::size_t degree_columns = 0);
std::string stats_csv_row(const TreeStats& s, std::size_t degree_columns = 0);

}  // namespace polyatree
