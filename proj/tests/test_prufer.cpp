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

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "polyatree/canonical.hpp"
#include "polyatree/counting.hpp"
#include "polyatree/error.hpp"
#include "polyatree/invariance.hpp"
#include "polyatree/oracle.hpp"
#include "polyatree/prufer.hpp"

using namespace polyatree;
using polyatree::testing::tree_from;

namespace {

Errc error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::invalid_argument;
}

std::vector<Vertex> parents_of(const RootedForest& f) {
  return {f.parents().begin(), f.parents().end()};
}

// The four-component forest of the decorated worked example; x_k and y_k are
// encoded as the label k.
DecoratedForest example_forest() {
  std::vector<Vertex> p(11, 0);
  auto set = [&](Vertex v, Vertex parent) { p[v - 1] = parent; };
  set(1, 8);
  set(11, 1);
  set(6, 1);
  set(10, 2);
  set(7, 2);
  set(5, 7);
  set(3, 9);
  DecoratedForest f{RootedForest::from_parents(p), {}};
  f.label.resize(12);
  for (Vertex v = 1; v <= 11; ++v) f.label[v] = v;
  return f;
}

const DecoratedPruferSeq kExampleSeq = {{9, 3}, {0, 4}, {7, 5},  {1, 6},  {2, 7}, {0, 9},
                                        {2, 10}, {0, 2}, {1, 11}, {8, 1}, {0, 8}};

// Every sigma-Prufer sequence for s, by an odometer over the allowed entries.
std::vector<SigmaPruferSeq> all_sigma_sequences(const Permutation& s) {
  std::vector<std::uint32_t> lengths;
  for (const auto& [d, c] : s.cycle_type().lambda) lengths.push_back(d);
  std::vector<std::vector<Vertex>> allowed;  // per position
  std::vector<std::pair<std::uint32_t, std::size_t>> layout;
  const std::size_t n = s.size();
  for (std::uint32_t d : lengths) {
    const std::size_t len = d == 1 ? s.cycle_type().count(1) - 1 : s.cycle_type().count(d);
    std::vector<Vertex> lam, strict;
    for (Vertex v = 1; v <= n; ++v) {
      const auto per = s.period(v);
      if (d % per == 0) lam.push_back(v);
      if (d % per == 0 && per < d) strict.push_back(v);
    }
    if (d == 1) strict = {1};
    for (std::size_t i = 0; i < len; ++i) allowed.push_back(i + 1 == len ? strict : lam);
    layout.emplace_back(d, len);
  }
  std::vector<SigmaPruferSeq> out;
  std::vector<std::size_t> digit(allowed.size(), 0);
  for (;;) {
    SigmaPruferSeq seq;
    std::size_t pos = 0;
    for (const auto& [d, len] : layout) {
      SigmaPruferBlock b{d, {}};
      for (std::size_t i = 0; i < len; ++i, ++pos) b.entries.push_back(allowed[pos][digit[pos]]);
      seq.blocks.push_back(b);
    }
    out.push_back(seq);
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == allowed[k].size()) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("cayley_decode examples") {
  const std::vector<Vertex> code{1, 3, 3};
  CHECK(parents_of(cayley_decode(code, 5)) == std::vector<Vertex>{0, 1, 1, 3, 3});
  CHECK(parents_of(cayley_decode({}, 2)) == std::vector<Vertex>{0, 1});
  CHECK(parents_of(cayley_decode({}, 1)) == std::vector<Vertex>{0});
  const std::vector<Vertex> ones{1, 1};
  CHECK(cayley_decode(ones, 4) == RootedTree::star(4));
  const std::vector<Vertex> bad{1, 6, 3};
  CHECK(error_code([&] { cayley_decode(bad, 5); }) == Errc::out_of_range);
  CHECK(error_code([&] { cayley_decode(code, 6); }) == Errc::size_mismatch);
}

TEST_CASE("cayley_encode examples") {
  CHECK(cayley_encode(tree_from({0, 1, 1, 3, 3})) == std::vector<Vertex>{1, 3, 3});
  CHECK(cayley_encode(tree_from({0, 1})).empty());
  CHECK(cayley_encode(RootedTree::star(4)) == std::vector<Vertex>{1, 1});
}

TEST_CASE("cayley codes are a bijection with degree d_i = n_i + 1") {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::set<std::vector<Vertex>> codes;
    for (const auto& t : oracle::enumerate_trees(n)) {
      const auto code = cayley_encode(t);
      CHECK(code.size() == (n >= 2 ? n - 2 : 0));
      CHECK(cayley_decode(code, n) == t);
      codes.insert(code);
      if (n >= 2) {
        std::vector<std::size_t> occ(n + 1, 0);
        for (Vertex a : code) ++occ[a];
        for (Vertex v = 1; v <= n; ++v) {
          const std::size_t degree = t.child_count(v) + (v == 1 ? 0 : 1);
          CHECK(degree == occ[v] + 1);
        }
      }
    }
    CHECK(codes.size() == oracle::enumerate_trees(n).size());
  }
}

TEST_CASE("cayley round trips on random codes") {
  Rng rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 3 + rng.below(60);
    std::vector<Vertex> code(n - 2);
    for (auto& a : code) a = static_cast<Vertex>(1 + rng.below(n));
    CHECK(cayley_encode(cayley_decode(code, n)) == code);
  }
}

TEST_CASE("sample_cayley is uniform on [4]") {
  CHECK(sample_cayley(1, *std::make_unique<Rng>(1)).size() == 1);
  Rng rng(2024);
  std::map<std::vector<Vertex>, std::uint64_t> freq;
  std::set<std::vector<std::uint32_t>> shapes;
  const std::uint64_t draws = 100000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto t = sample_cayley(4, rng);
    ++freq[parents_of(t)];
    if (i < 2000) shapes.insert(ahu_canonical(t).root_code);
  }
  CHECK(freq.size() == 16);
  const double p = 1.0 / 16;
  const double sd = std::sqrt(draws * p * (1 - p));
  for (const auto& [code, k] : freq) CHECK(std::abs(double(k) - draws * p) < 3 * sd);
  CHECK(shapes.size() == 4);
}

TEST_CASE("cayley degrees follow the balls-in-boxes law at n = 5") {
  // d_i - 1 counts code entries equal to i; a uniform code is n - 2 balls
  // thrown into n boxes.
  const std::size_t n = 5, balls = 3;
  std::map<std::vector<unsigned>, double> prob;
  std::vector<unsigned> c(n, 0);
  std::function<void(std::size_t, unsigned)> fill = [&](std::size_t box, unsigned left) {
    if (box + 1 == n) {
      c[box] = left;
      double coef = 6;  // 3!
      for (unsigned k : c) coef /= std::tgamma(k + 1.0);
      prob[c] = coef / std::pow(double(n), double(balls));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      c[box] = k;
      fill(box + 1, left - k);
    }
  };
  fill(0, balls);
  REQUIRE(prob.size() == 35);
  Rng rng(99);
  std::map<std::vector<unsigned>, std::uint64_t> seen;
  const std::uint64_t draws = 100000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto t = sample_cayley(n, rng);
    std::vector<unsigned> deg(n);
    for (Vertex v = 1; v <= n; ++v) {
      deg[v - 1] = static_cast<unsigned>(t.child_count(v) - (v == 1 ? 1 : 0));
    }
    ++seen[deg];
  }
  double chi2 = 0;
  for (const auto& [cell, p] : prob) {
    const double expected = p * draws;
    const double observed = seen.count(cell) ? double(seen[cell]) : 0.0;
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  CHECK(seen.size() == prob.size());
  const boost::math::chi_squared dist(double(prob.size() - 1));
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.001);
}

TEST_CASE("decorated worked example") {
  const auto f = example_forest();
  CHECK(prufer_encode_decorated(f) == kExampleSeq);
  const auto back = prufer_decode_decorated(kExampleSeq);
  CHECK(back.forest == f.forest);
  CHECK(back.label == f.label);
}

TEST_CASE("decorated small examples") {
  const DecoratedPruferSeq one{{0, 7}};
  const auto f1 = prufer_decode_decorated(one);
  CHECK(f1.forest.size() == 1);
  CHECK(f1.root_label(1) == 7);
  CHECK(prufer_encode_decorated(f1) == one);

  const DecoratedPruferSeq two{{2, 5}, {0, 9}};
  const auto f2 = prufer_decode_decorated(two);
  CHECK(parents_of(f2.forest) == std::vector<Vertex>{2, 0});
  CHECK(f2.edge_label(1) == 5);
  CHECK(f2.root_label(2) == 9);

  const DecoratedPruferSeq no_root{{2, 5}, {1, 9}};
  CHECK(error_code([&] { prufer_decode_decorated(no_root); }) == Errc::malformed_sequence);
  const DecoratedPruferSeq far{{3, 5}, {0, 9}};
  CHECK(error_code([&] { prufer_decode_decorated(far); }) == Errc::malformed_sequence);
}

TEST_CASE("decorated forests: exhaustive count f(m,x,y) = (mx+y)^(m-1) y") {
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::uint64_t x = 1; x <= 3; ++x) {
      for (std::uint64_t y = 1; y <= 3; ++y) {
        // Every sequence decodes to a distinct decorated forest.
        const std::uint64_t total = static_cast<std::uint64_t>(
            std::pow(double(m * x + y), double(m - 1)) * double(y));
        CHECK(oracle::count_decorated_forests(m, x, y) == BigCount(total));
        CHECK(f_count(m, x, y) == BigCount(total));
      }
    }
  }
  // Decoding is injective on every sequence for m = 4, x = y = 2.
  std::set<std::pair<std::vector<Vertex>, std::vector<std::uint32_t>>> seen;
  std::uint64_t sequences = 0;
  const std::size_t m = 4;
  std::vector<DecoratedEntry> seq(m);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m) {
      const auto f = prufer_decode_decorated(seq);
      ++sequences;
      CHECK(prufer_encode_decorated(f) == seq);
      seen.insert({parents_of(f.forest), f.label});
      return;
    }
    for (Vertex t = 0; t <= m; ++t) {
      if (i + 1 == m && t != 0) continue;
      for (std::uint32_t l = 0; l < 2; ++l) {
        seq[i] = {t, l};
        rec(i + 1);
      }
    }
  };
  rec(0);
  CHECK(seen.size() == sequences);
  CHECK(sequences == 10 * 10 * 10 * 2);
}

TEST_CASE("decorated round trips on random forests") {
  Rng rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 1 + rng.below(9);
    std::vector<Vertex> p(m, 0);
    // Random forest: attach each vertex of a shuffled order to an earlier one or make it a root.
    std::vector<Vertex> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<Vertex>(i + 1);
    for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t i = 1; i < m; ++i) {
      if (rng.below(3) != 0) p[order[i] - 1] = order[rng.below(i)];
    }
    DecoratedForest f{RootedForest::from_parents(p), std::vector<std::uint32_t>(m + 1, 0)};
    for (Vertex v = 1; v <= m; ++v) f.label[v] = static_cast<std::uint32_t>(rng.below(4));
    const auto seq = prufer_encode_decorated(f);
    CHECK(seq.size() == m);
    CHECK(seq.back().target == 0);
    const auto back = prufer_decode_decorated(seq);
    CHECK(back.forest == f.forest);
    CHECK(back.label == f.label);
    // Occurrences of j plus one is the degree of j, the root marker counting once.
    std::vector<std::size_t> occ(m + 1, 0);
    for (const auto& e : seq) occ[e.target] += e.target ? 1 : 0;
    for (Vertex v = 1; v <= m; ++v) CHECK(occ[v] + 1 == f.forest.child_count(v) + 1);
  }
}

TEST_CASE("sigma-Prufer worked example") {
  const auto t = testing::tree25();
  const auto s = testing::sigma25();
  const auto seq = sigma_prufer_encode(t, s);
  // Leaf-cycle removal gives (6,4,1) for the 2-cycles of the drawn tree.
  CHECK(seq.to_string() == "(4,4,1|6,4,1|2|18,10)");
  CHECK(seq.length() == 9);
  CHECK(sigma_prufer_decode(seq, s) == t);
  CHECK(SigmaPruferSeq::parse(seq.to_string(), s) == seq);

  // The printed walkthrough's 2-block (4,5,1) is itself valid and names a
  // different invariant tree. Its leaf 2-cycles are (7,8) and (9,10), so (7,8)
  // takes the 4, (9,10) the 5 and (5,6) the final 1.
  const auto other = sigma_prufer_decode(SigmaPruferSeq::parse("(4,4,1|4,5,1|2|18,10)", s), s);
  CHECK(is_invariant(other, s));
  CHECK_FALSE(other == t);
  CHECK(other.parent(7) == 4);
  CHECK(other.parent(8) == 4);
  CHECK(other.parent(9) == 5);
  CHECK(other.parent(10) == 6);
  CHECK(other.parent(5) == 1);
  CHECK(sigma_prufer_encode(other, s).to_string() == "(4,4,1|4,5,1|2|18,10)");
}

TEST_CASE("sigma-Prufer with the identity is the classical code plus a trailing 1") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    const auto t = sample_cayley(n, rng);
    const auto seq = sigma_prufer_encode(t, Permutation::identity(n));
    REQUIRE(seq.blocks.size() == 1);
    auto expected = cayley_encode(t);
    expected.push_back(1);
    CHECK(seq.blocks[0].entries == expected);
  }
  const auto single = sigma_prufer_encode(tree_from({0}), Permutation::identity(1));
  CHECK(single.length() == 0);
  CHECK(single.to_string() == "()");
  CHECK(sigma_prufer_decode(single, Permutation::identity(1)).size() == 1);
}

TEST_CASE("sigma-Prufer sequences biject with invariant trees for n <= 7") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto trees = oracle::enumerate_trees(n);
    for (const auto& s : testing::all_perms_fixing_one(n)) {
      std::set<std::vector<Vertex>> brute;
      for (const auto& t : trees) {
        if (is_invariant(t, s)) brute.insert(parents_of(t));
      }
      const auto seqs = all_sigma_sequences(s);
      std::set<std::vector<Vertex>> decoded;
      for (const auto& seq : seqs) {
        const auto t = sigma_prufer_decode(seq, s);
        CHECK(is_invariant(t, s));
        CHECK(sigma_prufer_encode(t, s) == seq);
        decoded.insert(parents_of(t));
      }
      CHECK(decoded.size() == seqs.size());
      CHECK(decoded == brute);
      CHECK(count_invariant_trees(s) == BigCount(brute.size()));
    }
  }
}

TEST_CASE("sigma-Prufer on (2,3): the single invariant tree") {
  const auto s = Permutation::parse("(2,3)", 3);
  const auto seqs = all_sigma_sequences(s);
  REQUIRE(seqs.size() == 1);
  CHECK(seqs[0].to_string() == "(|1)");
  CHECK(parents_of(sigma_prufer_decode(seqs[0], s)) == std::vector<Vertex>{0, 1, 1});
}

TEST_CASE("sigma-Prufer rejects bad blocks") {
  const auto s = testing::sigma25();
  auto bad = [&](const char* text) {
    return error_code([&] { sigma_prufer_decode(SigmaPruferSeq::parse(text, s), s); });
  };
  // Last 2-block entry must have period 1.
  CHECK(bad("(4,4,1|6,4,5|2|18,10)") == Errc::block_constraint);
  // 3-block entries must have period dividing 3.
  CHECK(bad("(4,4,1|6,4,1|5|18,10)") == Errc::block_constraint);
  // d = 1 block must end in 1.
  CHECK(bad("(4,4,2|6,4,1|2|18,10)") == Errc::block_constraint);
  CHECK(bad("(4,4|6,4,1|2|18,10)") == Errc::block_constraint);
  CHECK(bad("(4,4,1|6,4,1|2|18,26)") == Errc::out_of_range);
  CHECK(error_code([&] { SigmaPruferSeq::parse("(4,4,1|6,4,1|2)", s); }) ==
        Errc::malformed_sequence);
  CHECK(error_code([&] { SigmaPruferSeq::parse("4,4,1|6,4,1|2|18,10", s); }) ==
        Errc::malformed_sequence);
  CHECK(error_code([&] { SigmaPruferSeq::parse("(4,x,1|6,4,1|2|18,10)", s); }) ==
        Errc::malformed_sequence);
  CHECK(error_code([&] { sigma_prufer_encode(RootedTree::path(3), Permutation::parse("(2,3)", 3)); }) ==
        Errc::not_invariant);
}

TEST_CASE("sigma-Prufer round trips on random invariant trees") {
  // Decode random valid sequences for random permutations, then re-encode.
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<Vertex> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Vertex>(i + 1);
    for (std::size_t i = n; i > 2; --i) std::swap(img[i - 1], img[1 + rng.below(i - 1)]);
    const auto s = Permutation::from_images(img);
    SigmaPruferSeq seq;
    for (const auto& [d, count] : s.cycle_type().lambda) {
      SigmaPruferBlock b{d, {}};
      std::vector<Vertex> lam, strict;
      for (Vertex v = 1; v <= n; ++v) {
        if (d % s.period(v) == 0) lam.push_back(v);
        if (d % s.period(v) == 0 && s.period(v) < d) strict.push_back(v);
      }
      if (d == 1) strict = {1};
      const std::size_t len = d == 1 ? count - 1 : count;
      for (std::size_t i = 0; i < len; ++i) {
        const auto& pool = i + 1 == len ? strict : lam;
        b.entries.push_back(pool[rng.below(pool.size())]);
      }
      seq.blocks.push_back(b);
    }
    const auto t = sigma_prufer_decode(seq, s);
    CHECK(is_invariant(t, s));
    CHECK(sigma_prufer_encode(t, s) == seq);
  }
}

TEST_CASE("extended sigma-Prufer round trips on invariant forests") {
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto forests = oracle::enumerate_forests(m);
    std::vector<Vertex> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<Vertex>(i + 1);
    do {
      const auto s = Permutation::from_images(img);
      std::size_t invariant = 0;
      for (const auto& p : forests) {
        const auto f = RootedForest::from_parents(p);
        if (!is_invariant(f, s)) continue;
        ++invariant;
        const auto seq = extended_sigma_prufer_encode(f, s);
        CHECK(extended_sigma_prufer_decode(seq, s) == f);
      }
      CHECK(invariant > 0);
    } while (std::next_permutation(img.begin(), img.end()));
  }
}
