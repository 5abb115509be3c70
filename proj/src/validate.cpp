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

#include "polyatree/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "polyatree/burnside.hpp"
#include "polyatree/canonical.hpp"
#include "polyatree/counting.hpp"
#include "polyatree/error.hpp"
#include "polyatree/invariance.hpp"
#include "polyatree/oracle.hpp"
#include "polyatree/prufer.hpp"

namespace polyatree {

ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  ChiSquare out;
  if (counts.size() < 2) return out;
  const double total =
      static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  const double expected = total / static_cast<double>(counts.size());
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    out.statistic += d * d / expected;
  }
  out.dof = counts.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(out.dof));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

Permutation random_permutation_fixing_one(std::size_t n, Rng& rng) {
  std::vector<Vertex> image(n);
  std::iota(image.begin(), image.end(), Vertex{1});
  for (std::size_t i = n - 1; i >= 2; --i) {
    std::swap(image[i], image[1 + rng.below(i)]);
  }
  return Permutation::from_images(image);
}

std::size_t ClassIndex::classify(const RootedTree& t) {
  CanonicalCode code = ahu_canonical(t);
  auto it = std::find(codes_.begin(), codes_.end(), code.root_code);
  if (it != codes_.end()) return static_cast<std::size_t>(it - codes_.begin());
  codes_.push_back(std::move(code.root_code));
  return codes_.size() - 1;
}

ValidateLevel parse_validate_level(const std::string& name) {
  if (name == "quick") return ValidateLevel::quick;
  if (name == "full") return ValidateLevel::full;
  fail(Errc::invalid_argument, "unknown validation level '" + name + "' (expected quick or full)");
}

namespace {

class Reporter {
 public:
  explicit Reporter(const std::function<void(const std::string&)>& emit) : emit_(emit) {}

  void check(const std::string& name, bool ok, const std::string& detail) {
    all_ok_ = all_ok_ && ok;
    if (emit_) emit_((ok ? "PASS " : "FAIL ") + name + ": " + detail);
  }

  // Runs body; an exception counts as a failure of that check.
  template <class Body>
  void guarded(const std::string& name, Body&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }

  bool ok() const { return all_ok_; }

 private:
  const std::function<void(const std::string&)>& emit_;
  bool all_ok_ = true;
};

std::string join(const std::vector<BigCount>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

void check_tables(Reporter& r) {
  r.guarded("polya-counts", [&] {
    const auto t = polya_counts(10);
    const std::vector<BigCount> expect{1, 1, 2, 4, 9, 20, 48, 115, 286, 719};
    r.check("polya-counts", t == expect, join(t));
  });
  r.guarded("cayley-counts", [&] {
    std::vector<BigCount> got;
    for (std::size_t n = 1; n <= 10; ++n) got.push_back(count_invariant_trees(Permutation::identity(n)));
    const std::vector<BigCount> expect{1, 1, 3, 16, 125, 1296, 16807, 262144, 4782969, 100000000};
    r.check("cayley-counts", got == expect, join(got));
  });
}

void check_round_trips(Reporter& r, std::uint64_t seed, std::size_t cases) {
  r.guarded("roundtrip-cayley", [&] {
    std::size_t failures = 0;
    for (std::size_t k = 0; k < cases; ++k) {
      Rng rng(derive_stream_seed(seed, k));
      const std::size_t n = 1 + rng.below(40);
      std::vector<Vertex> code(n >= 2 ? n - 2 : 0);
      for (auto& a : code) a = static_cast<Vertex>(1 + rng.below(n));
      const RootedTree t = cayley_decode(code, n);
      if (cayley_encode(t) != code) ++failures;
    }
    r.check("roundtrip-cayley", failures == 0,
            std::to_string(cases) + " cases, " + std::to_string(failures) + " failures");
  });
  r.guarded("roundtrip-decorated", [&] {
    std::size_t failures = 0;
    for (std::size_t k = 0; k < cases; ++k) {
      Rng rng(derive_stream_seed(seed ^ 0xdec0, k));
      const std::size_t m = 1 + rng.below(30);
      const std::uint64_t x = 1 + rng.below(4);
      const std::uint64_t y = 1 + rng.below(4);
      DecoratedPruferSeq seq(m);
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t w = rng.below(i + 1 == m ? y : m * x + y);
        if (i + 1 < m && w < m * x) {
          seq[i] = {static_cast<Vertex>(w / x + 1), static_cast<std::uint32_t>(w % x)};
        } else {
          seq[i] = {0, static_cast<std::uint32_t>(i + 1 == m ? w : w - m * x)};
        }
      }
      if (prufer_encode_decorated(prufer_decode_decorated(seq)) != seq) ++failures;
    }
    r.check("roundtrip-decorated", failures == 0,
            std::to_string(cases) + " cases, " + std::to_string(failures) + " failures");
  });
  r.guarded("roundtrip-sigma-prufer", [&] {
    std::size_t failures = 0;
    for (std::size_t k = 0; k < cases; ++k) {
      Rng rng(derive_stream_seed(seed ^ 0x5167, k));
      const std::size_t n = 1 + rng.below(30);
      const Permutation s = random_permutation_fixing_one(n, rng);
      const RootedTree t = uniform_invariant_tree(s, rng);
      const SigmaPruferSeq seq = sigma_prufer_encode(t, s);
      if (!(sigma_prufer_decode(seq, s) == t)) ++failures;
    }
    r.check("roundtrip-sigma-prufer", failures == 0,
            std::to_string(cases) + " cases, " + std::to_string(failures) + " failures");
  });
}

std::vector<std::uint64_t> chain_class_counts(std::size_t n, std::size_t samples,
                                              std::uint64_t seed) {
  ClassIndex classes;
  std::map<std::size_t, std::uint64_t> counts;
  BurnsideChain chain(RootedTree::star(n));
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_stream_seed(seed, i));
    chain.reset(RootedTree::star(n));
    chain.run(20, rng);
    ++counts[classes.classify(chain.tree())];
  }
  std::vector<std::uint64_t> out;
  for (const auto& [id, c] : counts) out.push_back(c);
  return out;
}

void check_chain_n4(Reporter& r, std::uint64_t seed) {
  r.guarded("chain-n4", [&] {
    const std::size_t samples = 20000;
    const auto counts = chain_class_counts(4, samples, seed);
    bool ok = counts.size() == 4;
    std::ostringstream detail;
    detail << samples << " samples, frequencies";
    for (auto c : counts) {
      const double f = static_cast<double>(c) / samples;
      ok = ok && std::abs(f - 0.25) <= 0.015;
      detail << " " << f;
    }
    detail << " (0.25 +- 0.015)";
    r.check("chain-n4", ok, detail.str());
  });
}

void check_bruteforce_counts(Reporter& r) {
  r.guarded("bruteforce-counts", [&] {
    std::size_t perms = 0;
    std::size_t mismatches = 0;
    for (std::size_t n = 1; n <= 7; ++n) {
      const auto trees = oracle::enumerate_trees(n);
      std::vector<Vertex> image(n + 1);
      std::iota(image.begin(), image.end(), Vertex{0});
      do {
        const Permutation s = Permutation::from_images(std::span<const Vertex>(image).subspan(1));
        std::uint64_t brute = 0;
        for (const auto& t : trees) brute += is_invariant(t, s) ? 1 : 0;
        if (count_invariant_trees(s) != brute) ++mismatches;
        ++perms;
      } while (n >= 3 && std::next_permutation(image.begin() + 2, image.end()));
    }
    r.check("bruteforce-counts", mismatches == 0,
            std::to_string(perms) + " permutations fixing 1 (n <= 7), " +
                std::to_string(mismatches) + " mismatches");
  });
}

void check_burnside_lemma(Reporter& r) {
  r.guarded("burnside-lemma", [&] {
    const auto polya = polya_counts(8);
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t n = 1; n <= 8; ++n) {
      std::vector<Vertex> image(n + 1);
      std::iota(image.begin(), image.end(), Vertex{0});
      BigCount sum = 0;
      BigCount group = 0;
      do {
        sum += count_invariant_trees(
            Permutation::from_images(std::span<const Vertex>(image).subspan(1)));
        ++group;
      } while (n >= 3 && std::next_permutation(image.begin() + 2, image.end()));
      const bool exact = sum % group == 0 && sum / group == polya[n - 1];
      ok = ok && exact;
      detail << (n > 1 ? " " : "") << "n=" << n << ":" << sum / group;
    }
    r.check("burnside-lemma", ok, detail.str());
  });
}

void check_chain_n8(Reporter& r, std::uint64_t seed) {
  r.guarded("chain-n8-chisq", [&] {
    const std::size_t samples = 100000;
    const auto counts = chain_class_counts(8, samples, seed ^ 0x8);
    const ChiSquare chi = chi_square_uniform(counts);
    const bool ok = counts.size() == 115 && chi.p_value > 0.001;
    std::ostringstream detail;
    detail << samples << " samples, " << counts.size() << " classes, chi2=" << chi.statistic
           << " dof=" << chi.dof << " p=" << chi.p_value << " (p > 0.001)";
    r.check("chain-n8-chisq", ok, detail.str());
  });
}

}  // namespace

bool run_validation(ValidateLevel level, std::uint64_t seed,
                    const std::function<void(const std::string&)>& emit) {
  Reporter r(emit);
  check_tables(r);
  check_round_trips(r, seed, 1000);
  check_chain_n4(r, seed);
  if (level == ValidateLevel::full) {
    check_bruteforce_counts(r);
    check_burnside_lemma(r);
    check_chain_n8(r, seed);
  }
  return r.ok();
}

}  // namespace polyatree
