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

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace cli;

void add_common(CLI::App* sub, CommonOptions& c, bool seeded, bool threaded) {
  sub->add_option("--out,-o", c.out, "output file (default stdout)");
  sub->add_option("--manifest", c.manifest, "manifest path (default <out>.manifest.json)");
  if (seeded) sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
  if (threaded) {
    sub->add_option("--threads", c.threads, "worker threads (default $POLYATREE_THREADS)")
        ->check(CLI::PositiveNumber);
  }
}

// Points --out at `out`, replacing any earlier value.
std::vector<std::string> with_out(std::vector<std::string> argv, const std::string& out) {
  std::vector<std::string> result;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--out" || a == "-o") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    result.push_back(a);
  }
  result.push_back("--out");
  result.push_back(out);
  return result;
}

int run(const std::vector<std::string>& args);

int replay(const std::string& manifest_file, const std::string& out) {
  std::ifstream in(manifest_file, std::ios::binary);
  if (!in) throw CliError("cannot open " + manifest_file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw CliError(manifest_file + ": " + e.what());
  }
  if (!j.contains("argv") || !j["argv"].is_array()) throw CliError(manifest_file + ": no argv");
  auto argv = j["argv"].get<std::vector<std::string>>();
  if (argv.empty() || argv.front() == "replay") throw CliError(manifest_file + ": bad argv");
  if (!out.empty()) argv = with_out(std::move(argv), out);
  return run(argv);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"polyatree: random Polya and Cayley trees, exact counts, reference laws",
               "polyatree"};
  app.set_version_flag("--version", std::string(pt_version()));
  app.require_subcommand(1);

  CommonOptions common;
  common.threads = default_threads();

  SampleOptions sample;
  auto* s = app.add_subcommand("sample", "draw random trees");
  s->add_option("--kind", sample.kind, "polya or cayley")->capture_default_str();
  s->add_option("--n", sample.n, "vertices per tree")->required();
  s->add_option("--count", sample.count, "number of trees")->capture_default_str();
  auto* s_burnin =
      s->add_option("--burnin", sample.burnin, "Burnside steps (polya only)")->capture_default_str();
  s->add_option("--format", sample.format, "parentlist, csv or json")->capture_default_str();
  s->add_option("--degree-columns", sample.degree_columns, "append deg1..degK to csv rows");
  add_common(s, common, true, true);

  StatsOptions stats;
  auto* st = app.add_subcommand("stats", "aggregate statistics over random trees");
  st->add_option("--kind", stats.kind, "polya or cayley")->capture_default_str();
  st->add_option("--n", stats.n, "vertices per tree")->required();
  st->add_option("--count", stats.count, "number of trees")->capture_default_str();
  auto* st_burnin =
      st->add_option("--burnin", stats.burnin, "Burnside steps (polya only)")->capture_default_str();
  st->add_option("--format", stats.format, "json or csv")->capture_default_str();
  st->add_flag("--degrees", stats.degrees, "degree-fraction table");
  st->add_option("--degree-columns", stats.degree_columns, "degrees reported")
      ->capture_default_str();
  auto* st_raw = st->add_flag("--raw", stats.raw, "one csv row per sample");
  auto* st_trace =
      st->add_option("--trace", stats.trace, "csv rows for X_0..X_steps of one chain");
  st_raw->excludes(st_trace);
  add_common(st, common, true, true);

  CountOptions count;
  auto* c = app.add_subcommand("count", "exact number of sigma-invariant trees");
  auto* c_perm = c->add_option("--perm", count.perm, "permutation in cycle notation, e.g. (2,3)");
  c->add_option("--n", count.n, "size of the permutation");
  c->add_option("--type", count.type, "cycle type, e.g. \"1^2 2^1\"");
  c->add_option("--polya", count.polya, "print t_1..t_N instead");
  c->add_flag("--formula", count.formula, "also print the factorization");
  c->add_flag("--commuting", count.commuting, "also count functions commuting with sigma");
  add_common(c, common, false, false);

  ConstantsOptions constants;
  auto* k = app.add_subcommand("constants", "Otter's constants rho, b and sigma");
  k->add_option("--digits", constants.digits, "significant digits printed")
      ->capture_default_str();
  k->add_option("--truncation", constants.truncation, "size of the truncated system")
      ->capture_default_str();
  k->add_option("--precision", constants.precision, "working decimal digits")
      ->capture_default_str();
  k->add_option("--epsilon", constants.epsilon, "perturbation used for b")
      ->capture_default_str();
  k->add_option("--format", constants.format, "text, csv or json")->capture_default_str();
  add_common(k, common, false, false);

  RefdistOptions refdist;
  auto* r = app.add_subcommand("refdist", "tabulate a reference distribution");
  r->add_option("--dist", refdist.dist, "excursion, width, airy or maxdeg")->capture_default_str();
  auto* r_from = r->add_option("--from", refdist.from, "first grid point");
  auto* r_to = r->add_option("--to", refdist.to, "last grid point");
  auto* r_step = r->add_option("--step", refdist.step, "grid spacing");
  r_from->needs(r_to)->needs(r_step);
  r_to->needs(r_from);
  r_step->needs(r_from);
  r->add_option("--n", refdist.n, "tree size (maxdeg)")->capture_default_str();
  r->add_option("--rho", refdist.rho, "rho (maxdeg)")->capture_default_str();
  r->add_option("--c", refdist.c, "c (maxdeg)")->capture_default_str();
  r->add_option("--terms", refdist.terms, "series terms (airy, 1..20)")->capture_default_str();
  add_common(r, common, false, false);

  ValidateOptions validate;
  auto* v = app.add_subcommand("validate", "self-check against exact values");
  v->add_option("--level", validate.level, "quick or full")->capture_default_str();
  add_common(v, common, true, false);

  CodecOptions encode;
  auto* e = app.add_subcommand("encode", "parent lists to Prufer or sigma-Prufer codes");
  e->add_option("--input,-i", encode.input, "parent-list file (default stdin)");
  auto* e_perm = e->add_option("--perm", encode.perm, "sigma in cycle notation");
  e->add_option("--type", encode.type, "sigma by cycle type");
  e->add_option("--n", encode.n, "size of sigma (default: tree size)");
  add_common(e, common, false, false);

  CodecOptions decode;
  auto* d = app.add_subcommand("decode", "Prufer or sigma-Prufer codes to parent lists");
  d->add_option("--input,-i", decode.input, "code file, one code per line (default stdin)");
  auto* d_perm = d->add_option("--perm", decode.perm, "sigma in cycle notation");
  d->add_option("--type", decode.type, "sigma by cycle type");
  d->add_option("--n", decode.n, "tree size");
  add_common(d, common, false, false);

  std::string replay_file;
  std::string replay_out;
  auto* rp = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  rp->add_option("manifest", replay_file, "manifest file")->required();
  rp->add_option("--out,-o", replay_out, "write the data here instead");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kOk : kUsage;
  }

  if (rp->parsed()) return replay(replay_file, replay_out);

  Manifest manifest;
  manifest.argv = args;
  manifest.seed = common.seed;
  manifest.threads = common.threads;
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  if (s->parsed()) {
    manifest.subcommand = "sample";
    sample.burnin_given = s_burnin->count() > 0;
    code = run_sample(sample, common, manifest);
  } else if (st->parsed()) {
    manifest.subcommand = "stats";
    stats.burnin_given = st_burnin->count() > 0;
    code = run_stats(stats, common, manifest);
  } else if (c->parsed()) {
    manifest.subcommand = "count";
    count.perm_given = c_perm->count() > 0;
    code = run_count(count, common, manifest);
  } else if (k->parsed()) {
    manifest.subcommand = "constants";
    code = run_constants(constants, common, manifest);
  } else if (r->parsed()) {
    manifest.subcommand = "refdist";
    refdist.grid_given = r_from->count() > 0;
    code = run_refdist(refdist, common, manifest);
  } else if (v->parsed()) {
    manifest.subcommand = "validate";
    code = run_validate(validate, common, manifest);
  } else if (e->parsed()) {
    manifest.subcommand = "encode";
    encode.perm_given = e_perm->count() > 0;
    code = run_encode(encode, common, manifest);
  } else if (d->parsed()) {
    manifest.subcommand = "decode";
    decode.perm_given = d_perm->count() > 0;
    code = run_decode(decode, common, manifest);
  }
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string path = manifest_path(common.out, common.manifest);
  if (!path.empty()) write_manifest(path, manifest);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const CliError& e) {
    std::cerr << "polyatree: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "polyatree: " << e.what() << '\n';
    return kUsage;
  }
}
