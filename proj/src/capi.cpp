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

#include "polyatree/polyatree.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <map>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polyatree/burnside.hpp"
#include "polyatree/canonical.hpp"
#include "polyatree/constants.hpp"
#include "polyatree/counting.hpp"
#include "polyatree/error.hpp"
#include "polyatree/invariance.hpp"
#include "polyatree/permutation.hpp"
#include "polyatree/prufer.hpp"
#include "polyatree/refdist.hpp"
#include "polyatree/stats.hpp"
#include "polyatree/validate.hpp"

#ifndef POLYATREE_VERSION_STRING
#define POLYATREE_VERSION_STRING "unknown"
#endif

struct pt_tree {
  polyatree::RootedTree tree;
  mutable std::optional<polyatree::TreeStats> stats;
};

struct pt_perm {
  polyatree::Permutation perm;
};

struct pt_batch {
  polyatree::BatchSummary summary;
};

namespace {

using polyatree::Errc;

thread_local std::string last_error;

pt_status set_error(pt_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body and turns exceptions into status codes.
template <class F>
pt_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const polyatree::Error& e) {
    return set_error(static_cast<pt_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PT_INTERNAL, e.what());
  } catch (...) {
    return set_error(PT_INTERNAL, "unknown exception");
  }
}

pt_status null_argument(const char* name) {
  return set_error(PT_INVALID_ARGUMENT, std::string(name) + " is null");
}

pt_status copy_string(const std::string& s, char** out) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) return set_error(PT_INTERNAL, "out of memory");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
  return PT_OK;
}

void fill_stats(const polyatree::TreeStats& s, pt_tree_stats* out) {
  out->n = s.n;
  out->height = s.height;
  out->path_length = s.path_length;
  out->width = s.width;
  out->leaf_count = s.leaf_count;
  out->max_degree = s.max_degree;
  out->max_out_degree = s.max_out_degree;
  out->log_aut = s.log_aut;
  out->profile = s.profile.data();
  out->profile_len = s.profile.size();
  out->degree_hist = s.degree_hist.data();
  out->degree_hist_len = s.degree_hist.size();
}

polyatree::BatchConfig to_config(const pt_batch_config& c) {
  polyatree::BatchConfig config;
  switch (c.kind) {
    case PT_KIND_POLYA: config.kind = polyatree::TreeKind::polya; break;
    case PT_KIND_CAYLEY: config.kind = polyatree::TreeKind::cayley; break;
    default: polyatree::fail(Errc::invalid_argument, "unknown tree kind");
  }
  config.n = c.n;
  config.samples = c.samples;
  config.burnin = c.burnin;
  config.seed = c.seed;
  config.threads = c.threads == 0 ? 1 : c.threads;
  return config;
}

// Callback abort travels through the library as an exception.
struct CallbackAbort {};

// "1^2 2^1", "1^2,2" or "1 1 2": a bare length counts once.
std::map<std::uint32_t, std::uint32_t> parse_cycle_type(const std::string& type_text) {
  std::string text = type_text;
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::map<std::uint32_t, std::uint32_t> lambda;
  std::string item;
  while (in >> item) {
    const auto caret = item.find('^');
    const std::string len = item.substr(0, caret);
    const std::string cnt = caret == std::string::npos ? "1" : item.substr(caret + 1);
    auto number = [&](const std::string& s) -> std::uint32_t {
      if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) {
        polyatree::fail(Errc::malformed_sequence, "bad cycle type item '" + item + "'");
      }
      return static_cast<std::uint32_t>(std::stoul(s));
    };
    const std::uint32_t d = number(len);
    const std::uint32_t c = number(cnt);
    if (d == 0) polyatree::fail(Errc::malformed_sequence, "cycle length 0");
    lambda[d] += c;
  }
  if (lambda.empty()) polyatree::fail(Errc::malformed_sequence, "empty cycle type");
  if (lambda[1] == 0) polyatree::fail(Errc::not_fixing_one, "cycle type has no fixed point");
  std::uint64_t total = 0;
  for (const auto& [d, c] : lambda) total += static_cast<std::uint64_t>(d) * c;
  if (total > 100000000) polyatree::fail(Errc::size_cap, "permutation larger than 10^8 points");
  return lambda;
}

}  // namespace

extern "C" {

const char* pt_version(void) { return POLYATREE_VERSION_STRING; }

const char* pt_last_error(void) { return last_error.c_str(); }

const char* pt_status_name(pt_status status) {
  switch (status) {
    case PT_OK: return "ok";
    case PT_BUFFER_TOO_SMALL: return "buffer too small";
    case PT_CALLBACK_ABORT: return "aborted by callback";
    case PT_INTERNAL: return "internal error";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(Errc::size_cap)) {
    return polyatree::errc_name(static_cast<Errc>(code));
  }
  return "unknown status";
}

void pt_string_free(char* s) { std::free(s); }

// ---- trees ----------------------------------------------------------------

pt_status pt_tree_from_parents(const uint32_t* parents, size_t n, pt_tree** out) {
  if (!out) return null_argument("out");
  if (!parents && n) return null_argument("parents");
  return guarded([&] {
    auto t = polyatree::RootedTree::from_parents(std::span<const polyatree::Vertex>(parents, n));
    *out = new pt_tree{std::move(t), std::nullopt};
    return PT_OK;
  });
}

void pt_tree_free(pt_tree* tree) { delete tree; }

size_t pt_tree_size(const pt_tree* tree) { return tree ? tree->tree.size() : 0; }

pt_status pt_tree_parents(const pt_tree* tree, uint32_t* out, size_t cap) {
  if (!tree) return null_argument("tree");
  const auto parents = tree->tree.parents();
  if (cap < parents.size()) {
    return set_error(PT_BUFFER_TOO_SMALL, "need room for " + std::to_string(parents.size()) +
                                              " parents");
  }
  if (!out) return null_argument("out");
  std::copy(parents.begin(), parents.end(), out);
  return PT_OK;
}

pt_status pt_tree_canonical(const pt_tree* tree, char** out) {
  if (!tree) return null_argument("tree");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto code = polyatree::ahu_canonical(tree->tree);
    std::string s;
    for (std::size_t i = 0; i < code.root_code.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(code.root_code[i]);
    }
    return copy_string(s, out);
  });
}

pt_status pt_trees_isomorphic(const pt_tree* a, const pt_tree* b, int* out) {
  if (!a || !b) return null_argument("tree");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = a->tree.size() == b->tree.size() &&
           polyatree::ahu_canonical(a->tree).root_code ==
               polyatree::ahu_canonical(b->tree).root_code;
    return PT_OK;
  });
}

pt_status pt_tree_aut_size(const pt_tree* tree, char** out) {
  if (!tree) return null_argument("tree");
  if (!out) return null_argument("out");
  return guarded([&] { return copy_string(polyatree::aut_size(tree->tree).str(), out); });
}

pt_status pt_tree_stats_compute(const pt_tree* tree, pt_tree_stats* out) {
  if (!tree) return null_argument("tree");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (!tree->stats) tree->stats = polyatree::compute_stats(tree->tree);
    fill_stats(*tree->stats, out);
    return PT_OK;
  });
}

// ---- Prufer codes and samplers ----------------------------------------------

pt_status pt_cayley_encode(const pt_tree* tree, uint32_t* out, size_t cap, size_t* len) {
  if (!tree) return null_argument("tree");
  return guarded([&] {
    const auto code = polyatree::cayley_encode(tree->tree);
    if (len) *len = code.size();
    if (cap < code.size()) {
      return set_error(PT_BUFFER_TOO_SMALL,
                       "need room for " + std::to_string(code.size()) + " entries");
    }
    if (!code.empty() && !out) return null_argument("out");
    std::copy(code.begin(), code.end(), out);
    return PT_OK;
  });
}

pt_status pt_cayley_decode(const uint32_t* code, size_t len, size_t n, pt_tree** out) {
  if (!out) return null_argument("out");
  if (!code && len) return null_argument("code");
  return guarded([&] {
    auto t = polyatree::cayley_decode(std::span<const polyatree::Vertex>(code, len), n);
    *out = new pt_tree{std::move(t), std::nullopt};
    return PT_OK;
  });
}

pt_status pt_sample_cayley(size_t n, uint64_t seed, pt_tree** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    if (n == 0) polyatree::fail(Errc::invalid_argument, "n must be positive");
    polyatree::Rng rng(seed);
    *out = new pt_tree{polyatree::sample_cayley(n, rng), std::nullopt};
    return PT_OK;
  });
}

pt_status pt_sample_polya(size_t n, size_t burnin, uint64_t seed, pt_tree** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    if (n == 0) polyatree::fail(Errc::invalid_argument, "n must be positive");
    polyatree::ChainConfig config;
    config.n = n;
    config.burnin = burnin;
    config.seed = seed;
    *out = new pt_tree{polyatree::sample_polya(config), std::nullopt};
    return PT_OK;
  });
}

// ---- permutations ------------------------------------------------------------

pt_status pt_perm_parse(const char* text, size_t n, pt_perm** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new pt_perm{polyatree::Permutation::parse(text, n)};
    return PT_OK;
  });
}

pt_status pt_perm_from_cycle_type(const char* cycle_type, pt_perm** out) {
  if (!cycle_type) return null_argument("cycle_type");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new pt_perm{polyatree::Permutation::from_cycle_type(parse_cycle_type(cycle_type))};
    return PT_OK;
  });
}

void pt_perm_free(pt_perm* perm) { delete perm; }

size_t pt_perm_size(const pt_perm* perm) { return perm ? perm->perm.size() : 0; }

pt_status pt_perm_to_string(const pt_perm* perm, char** out) {
  if (!perm) return null_argument("perm");
  if (!out) return null_argument("out");
  return guarded([&] { return copy_string(perm->perm.to_string(), out); });
}

pt_status pt_sigma_prufer_encode(const pt_tree* tree, const pt_perm* perm, char** out) {
  if (!tree) return null_argument("tree");
  if (!perm) return null_argument("perm");
  if (!out) return null_argument("out");
  return guarded([&] {
    return copy_string(polyatree::sigma_prufer_encode(tree->tree, perm->perm).to_string(), out);
  });
}

pt_status pt_sigma_prufer_decode(const char* text, const pt_perm* perm, pt_tree** out) {
  if (!text) return null_argument("text");
  if (!perm) return null_argument("perm");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto seq = polyatree::SigmaPruferSeq::parse(text, perm->perm);
    *out = new pt_tree{polyatree::sigma_prufer_decode(seq, perm->perm), std::nullopt};
    return PT_OK;
  });
}

pt_status pt_is_invariant(const pt_tree* tree, const pt_perm* perm, int* out) {
  if (!tree) return null_argument("tree");
  if (!perm) return null_argument("perm");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (tree->tree.size() != perm->perm.size()) {
      polyatree::fail(Errc::size_mismatch, "tree and permutation sizes differ");
    }
    *out = polyatree::is_invariant(tree->tree, perm->perm) ? 1 : 0;
    return PT_OK;
  });
}

// ---- exact counts -------------------------------------------------------------

pt_status pt_count_invariant_trees(const pt_perm* perm, char** out) {
  if (!perm) return null_argument("perm");
  if (!out) return null_argument("out");
  return guarded(
      [&] { return copy_string(polyatree::count_invariant_trees(perm->perm).str(), out); });
}

pt_status pt_count_formula(const pt_perm* perm, char** out) {
  if (!perm) return null_argument("perm");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (!perm->perm.fixes(1)) polyatree::fail(Errc::not_fixing_one, "permutation moves 1");
    return copy_string(polyatree::invariant_count_formula(perm->perm.cycle_type()), out);
  });
}

pt_status pt_polya_counts(size_t nmax, char** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    if (nmax == 0) polyatree::fail(Errc::invalid_argument, "nmax must be positive");
    if (nmax > 100000) polyatree::fail(Errc::size_cap, "nmax is capped at 10^5");
    const auto counts = polyatree::polya_counts(nmax);
    std::string s;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i) s += ',';
      s += counts[i].str();
    }
    return copy_string(s, out);
  });
}

pt_status pt_count_commuting_functions(const pt_perm* perm, char** out) {
  if (!perm) return null_argument("perm");
  if (!out) return null_argument("out");
  return guarded(
      [&] { return copy_string(polyatree::count_commuting_functions(perm->perm).str(), out); });
}

// ---- constants and reference distributions -------------------------------------

pt_status pt_otter_constants(size_t truncation, unsigned precision, double epsilon,
                             unsigned digits, pt_constants* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    if (digits == 0 || digits > 200 || digits > precision) {
      polyatree::fail(Errc::invalid_argument, "digits must be in 1..min(200, precision)");
    }
    const auto c = polyatree::otter_constants(truncation, precision, epsilon);
    auto put = [&](char* dst, const std::string& value) {
      const std::string r = polyatree::round_significant(value, digits);
      const std::size_t len = std::min<std::size_t>(r.size(), 255);
      std::memcpy(dst, r.data(), len);
      dst[len] = '\0';
    };
    put(out->rho, c.rho);
    put(out->b, c.b);
    put(out->sigma, c.sigma);
    out->rho_value = c.rho_value;
    out->b_value = c.b_value;
    out->sigma_value = c.sigma_value;
    return PT_OK;
  });
}

pt_status pt_excursion_max_cdf(double x, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = polyatree::excursion_max_cdf(x);
    return PT_OK;
  });
}

pt_status pt_width_max_cdf(double x, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = polyatree::width_max_cdf(x);
    return PT_OK;
  });
}

pt_status pt_airy_area_density(double x, int terms, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = polyatree::airy_area_density(x, terms);
    return PT_OK;
  });
}

pt_status pt_max_degree_cdf(size_t n, double rho, double c, double m, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    if (n == 0 || !(rho > 0 && rho < 1) || !(c > 0)) {
      polyatree::fail(Errc::invalid_argument, "need n > 0, 0 < rho < 1 and c > 0");
    }
    *out = polyatree::max_degree_cdf({n, rho, c}, m);
    return PT_OK;
  });
}

// ---- batches ---------------------------------------------------------------------

pt_status pt_batch_run(const pt_batch_config* config, pt_stats_callback callback, void* user,
                       pt_batch** out) {
  if (!config) return null_argument("config");
  return guarded([&] {
    polyatree::SampleCallback on_sample;
    if (callback) {
      on_sample = [&](std::size_t index, const polyatree::TreeStats& s) {
        pt_tree_stats view;
        fill_stats(s, &view);
        if (callback(user, index, &view) != 0) throw CallbackAbort{};
      };
    }
    try {
      auto summary = polyatree::run_batch(to_config(*config), on_sample);
      if (out) *out = new pt_batch{std::move(summary)};
    } catch (const CallbackAbort&) {
      return set_error(PT_CALLBACK_ABORT, "stopped by callback");
    }
    return PT_OK;
  });
}

pt_status pt_batch_sample_trees(const pt_batch_config* config, pt_tree_callback callback,
                                void* user) {
  if (!config) return null_argument("config");
  if (!callback) return null_argument("callback");
  return guarded([&] {
    try {
      polyatree::sample_trees(to_config(*config),
                              [&](std::size_t index, const polyatree::RootedTree& t) {
                                const pt_tree handle{t, std::nullopt};
                                if (callback(user, index, &handle) != 0) throw CallbackAbort{};
                              });
    } catch (const CallbackAbort&) {
      return set_error(PT_CALLBACK_ABORT, "stopped by callback");
    }
    return PT_OK;
  });
}

void pt_batch_free(pt_batch* batch) { delete batch; }

pt_status pt_batch_moments(const pt_batch* batch, pt_feature feature, pt_moments* out) {
  if (!batch) return null_argument("batch");
  if (!out) return null_argument("out");
  const auto& s = batch->summary;
  const polyatree::Moments* m = nullptr;
  switch (feature) {
    case PT_FEATURE_HEIGHT: m = &s.height; break;
    case PT_FEATURE_PATH_LENGTH: m = &s.path_length; break;
    case PT_FEATURE_WIDTH: m = &s.width; break;
    case PT_FEATURE_LEAF_COUNT: m = &s.leaf_count; break;
    case PT_FEATURE_MAX_DEGREE: m = &s.max_degree; break;
    case PT_FEATURE_LOG_AUT: m = &s.log_aut; break;
    case PT_FEATURE_HEIGHT_NORM: m = &s.height_norm; break;
    case PT_FEATURE_WIDTH_NORM: m = &s.width_norm; break;
    case PT_FEATURE_PATH_LENGTH_NORM: m = &s.path_length_norm; break;
    case PT_FEATURE_LEAF_FRACTION: m = &s.leaf_fraction; break;
    case PT_FEATURE_LOG_AUT_NORM: m = &s.log_aut_norm; break;
    case PT_FEATURE_MAX_OUT_DEGREE: m = &s.max_out_degree; break;
  }
  if (!m) return set_error(PT_INVALID_ARGUMENT, "unknown feature");
  *out = {m->count, m->mean, m->variance(), m->min, m->max};
  return PT_OK;
}

pt_status pt_batch_histogram(const pt_batch* batch, pt_histogram which, uint64_t* values,
                             uint64_t* counts, size_t cap, size_t* len) {
  if (!batch) return null_argument("batch");
  if (cap && (!values || !counts)) return null_argument("values/counts");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> bins;
  const auto& s = batch->summary;
  auto from_map = [&](const std::map<std::uint32_t, std::uint64_t>& m) {
    for (const auto& [v, c] : m) {
      if (c) bins.emplace_back(v, c);
    }
  };
  switch (which) {
    case PT_HIST_HEIGHT: from_map(s.height_hist); break;
    case PT_HIST_WIDTH: from_map(s.width_hist); break;
    case PT_HIST_MAX_DEGREE: from_map(s.max_degree_hist); break;
    case PT_HIST_MAX_OUT_DEGREE: from_map(s.max_out_degree_hist); break;
    case PT_HIST_DEGREE:
      for (std::size_t k = 0; k < s.degree_total.size(); ++k) {
        if (s.degree_total[k]) bins.emplace_back(k, s.degree_total[k]);
      }
      break;
    default: return set_error(PT_INVALID_ARGUMENT, "unknown histogram");
  }
  if (len) *len = bins.size();
  const std::size_t k = std::min(cap, bins.size());
  for (std::size_t i = 0; i < k; ++i) {
    values[i] = bins[i].first;
    counts[i] = bins[i].second;
  }
  return PT_OK;
}

pt_status pt_batch_degree_fraction(const pt_batch* batch, size_t k, double* out) {
  if (!batch) return null_argument("batch");
  if (!out) return null_argument("out");
  *out = batch->summary.degree_fraction(k);
  return PT_OK;
}

pt_status pt_batch_height_fit(const pt_batch* batch, pt_height_fit method, double* mu,
                               double* sigma) {
  if (!batch) return null_argument("batch");
  if (!mu || !sigma) return null_argument("mu/sigma");
  if (method != PT_HEIGHT_FIT_SHAPE && method != PT_HEIGHT_FIT_LIKELIHOOD) {
    return set_error(PT_INVALID_ARGUMENT, "unknown height fit");
  }
  return guarded([&] {
    const auto fit = polyatree::fit_height_scale(
        batch->summary.height_hist, batch->summary.config.n,
        method == PT_HEIGHT_FIT_SHAPE ? polyatree::HeightFit::shape
                                      : polyatree::HeightFit::likelihood);
    *mu = fit.mu;
    *sigma = fit.sigma;
    return PT_OK;
  });
}

pt_status pt_chain_trace(size_t n, size_t steps, uint64_t seed, pt_stats_callback callback,
                         void* user) {
  if (!callback) return null_argument("callback");
  return guarded([&] {
    if (n == 0) polyatree::fail(Errc::invalid_argument, "n must be positive");
    polyatree::ChainConfig config;
    config.n = n;
    config.burnin = 0;
    config.seed = seed;
    polyatree::Rng rng(seed);
    const auto trace = polyatree::chain_trace(config, steps, rng);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      pt_tree_stats view;
      fill_stats(trace[i], &view);
      if (callback(user, i, &view) != 0) {
        return set_error(PT_CALLBACK_ABORT, "stopped by callback");
      }
    }
    return PT_OK;
  });
}

// ---- self-check ------------------------------------------------------------------

pt_status pt_validate(const char* level, uint64_t seed, pt_line_callback callback, void* user,
                      int* passed) {
  if (!level) return null_argument("level");
  return guarded([&] {
    const auto lvl = polyatree::parse_validate_level(level);
    const bool ok = polyatree::run_validation(lvl, seed, [&](const std::string& line) {
      if (callback) callback(user, line.c_str());
    });
    if (passed) *passed = ok ? 1 : 0;
    return PT_OK;
  });
}

}  // extern "C"
