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

#include "polyatree/stats.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "polyatree/burnside.hpp"
#include "polyatree/error.hpp"
#include "polyatree/prufer.hpp"
#include "polyatree/rng.hpp"

namespace polyatree {

TreeStats StatsWorkspace::compute(const RootedTree& t) {
  TreeStats s;
  const std::size_t n = t.size();
  s.n = n;
  canon_.compute_inumbers(t);
  const LevelOrder& lv = canon_.levels();
  s.height = static_cast<std::uint32_t>(lv.height());
  s.profile.resize(s.height);
  for (std::uint32_t k = 1; k <= s.height; ++k) {
    const std::uint32_t w = lv.level_start[k + 1] - lv.level_start[k];
    s.profile[k - 1] = w;
    s.path_length += static_cast<std::uint64_t>(k) * w;
    s.width = std::max(s.width, w);
  }
  std::vector<std::uint32_t> degree(n + 1, 0);
  for (Vertex v = 2; v <= n; ++v) {
    ++degree[v];
    ++degree[t.parent(v)];
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (t.is_leaf(v)) ++s.leaf_count;
    s.max_degree = std::max(s.max_degree, degree[v]);
    s.max_out_degree = std::max(s.max_out_degree, degree[v] - (v == 1 ? 0 : 1));
  }
  s.degree_hist.assign(s.max_degree + 1, 0);
  for (Vertex v = 1; v <= n; ++v) ++s.degree_hist[degree[v]];
  s.log_aut = canon_.log_aut(t);
  return s;
}

TreeStats compute_stats(const RootedTree& t) {
  StatsWorkspace ws;
  return ws.compute(t);
}

void Moments::add(double x) {
  if (count == 0) {
    min = max = x;
  } else {
    min = std::min(min, x);
    max = std::max(max, x);
  }
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void Moments::merge(const Moments& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(count + other.count);
  const double delta = other.mean - mean;
  mean += delta * static_cast<double>(other.count) / total;
  m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) /
                       total;
  count += other.count;
  min = std::min(min, other.min);
  max = std::max(max, other.max);
}

double Moments::stddev() const { return std::sqrt(variance()); }

const char* tree_kind_name(TreeKind kind) { return kind == TreeKind::polya ? "polya" : "cayley"; }

TreeKind parse_tree_kind(const std::string& name) {
  if (name == "polya") return TreeKind::polya;
  if (name == "cayley") return TreeKind::cayley;
  fail(Errc::invalid_argument, "unknown tree kind '" + name + "' (expected polya or cayley)");
}

double BatchSummary::degree_fraction(std::size_t k) const {
  if (k >= degree_fraction_sum.size() || config.samples == 0) return 0.0;
  return degree_fraction_sum[k] / static_cast<double>(config.samples);
}

namespace {

struct Worker {
  std::optional<BurnsideChain> chain;
  StatsWorkspace stats;
};

RootedTree draw(const BatchConfig& config, std::size_t index, Worker& w) {
  Rng rng(derive_stream_seed(config.seed, index));
  if (config.kind == TreeKind::cayley) return sample_cayley(config.n, rng);
  if (!w.chain) w.chain.emplace(RootedTree::star(config.n));
  w.chain->reset(RootedTree::star(config.n));
  w.chain->run(config.burnin, rng);
  return w.chain->tree();
}

void check_config(const BatchConfig& config) {
  if (config.n == 0) fail(Errc::invalid_argument, "tree size must be positive");
  if (config.samples == 0) fail(Errc::invalid_argument, "sample count must be positive");
}

// Produces items 0..count-1 on `threads` workers and hands them to consume()
// on the calling thread in index order.
template <class T, class Produce, class Consume>
void ordered_parallel(std::size_t count, unsigned threads, Produce produce, Consume consume) {
  threads = std::max(1u, threads);
  std::vector<Worker> workers(threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) consume(i, produce(i, workers[0]));
    return;
  }
  const std::size_t block = 256 * static_cast<std::size_t>(threads);
  std::vector<std::optional<T>> results;
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t len = std::min(block, count - start);
    results.assign(len, std::nullopt);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < len;) {
            results[i].emplace(produce(start + i, workers[w]));
          }
        } catch (...) {
          errors[w] = std::current_exception();
          next.store(len);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (std::size_t i = 0; i < len; ++i) consume(start + i, std::move(*results[i]));
  }
}

}  // namespace

RootedTree generate_tree(const BatchConfig& config, std::size_t index) {
  check_config(config);
  Worker w;
  return draw(config, index, w);
}

BatchSummary run_batch(const BatchConfig& config, const SampleCallback& on_sample) {
  check_config(config);
  BatchSummary sum;
  sum.config = config;
  const double n = static_cast<double>(config.n);
  const double root_n = std::sqrt(n);
  ordered_parallel<TreeStats>(
      config.samples, config.threads,
      [&](std::size_t i, Worker& w) { return w.stats.compute(draw(config, i, w)); },
      [&](std::size_t i, TreeStats s) {
        sum.height.add(s.height);
        sum.path_length.add(static_cast<double>(s.path_length));
        sum.width.add(s.width);
        sum.leaf_count.add(s.leaf_count);
        sum.max_degree.add(s.max_degree);
        sum.max_out_degree.add(s.max_out_degree);
        sum.log_aut.add(s.log_aut);
        sum.height_norm.add(s.height / root_n);
        sum.width_norm.add(s.width / root_n);
        sum.path_length_norm.add(static_cast<double>(s.path_length) / (n * root_n));
        sum.leaf_fraction.add(s.leaf_count / n);
        sum.log_aut_norm.add(s.log_aut / n);
        ++sum.height_hist[s.height];
        ++sum.width_hist[s.width];
        ++sum.max_degree_hist[s.max_degree];
        ++sum.max_out_degree_hist[s.max_out_degree];
        if (sum.degree_total.size() < s.degree_hist.size()) {
          sum.degree_total.resize(s.degree_hist.size(), 0);
          sum.degree_fraction_sum.resize(s.degree_hist.size(), 0.0);
        }
        for (std::size_t k = 0; k < s.degree_hist.size(); ++k) {
          sum.degree_total[k] += s.degree_hist[k];
          sum.degree_fraction_sum[k] += s.degree_hist[k] / n;
        }
        if (on_sample) on_sample(i, s);
      });
  return sum;
}

void sample_trees(const BatchConfig& config, const TreeCallback& on_tree) {
  check_config(config);
  ordered_parallel<RootedTree>(
      config.samples, config.threads,
      [&](std::size_t i, Worker& w) { return draw(config, i, w); },
      [&](std::size_t i, const RootedTree& t) { on_tree(i, t); });
}

std::vector<double> degree_fractions(TreeKind kind, std::size_t n, std::size_t samples,
                                     std::uint64_t seed, unsigned threads) {
  BatchConfig config;
  config.kind = kind;
  config.n = n;
  config.samples = samples;
  config.seed = seed;
  config.threads = threads;
  const BatchSummary sum = run_batch(config);
  std::vector<double> out;
  for (std::size_t k = 1; k <= 10; ++k) out.push_back(sum.degree_fraction(k));
  return out;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string stats_csv_header(std::size_t degree_columns) {
  std::string h = "height,path_length,width,leaf_count,max_degree,log_aut";
  for (std::size_t k = 1; k <= degree_columns; ++k) h += ",deg" + std::to_string(k);
  return h;
}

std::string stats_csv_row(const TreeStats& s, std::size_t degree_columns) {
  std::string r = std::to_string(s.height) + "," + std::to_string(s.path_length) + "," +
                  std::to_string(s.width) + "," + std::to_string(s.leaf_count) + "," +
                  std::to_string(s.max_degree) + "," + format_double(s.log_aut);
  for (std::size_t k = 1; k <= degree_columns; ++k) {
    r += ",";
    r += std::to_string(k < s.degree_hist.size() ? s.degree_hist[k] : 0);
  }
  return r;
}

}  // namespace polyatree
