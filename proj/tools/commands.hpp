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
#include <string>

#include "cli.hpp"

namespace cli {

struct CommonOptions {
  std::string out;       // "" or "-" for stdout
  std::string manifest;  // overrides <out>.manifest.json
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SampleOptions {
  std::string kind = "polya";
  std::size_t n = 0;
  std::size_t count = 1;
  std::size_t burnin = 20;
  bool burnin_given = false;
  std::string format = "parentlist";
  std::size_t degree_columns = 0;
};

struct StatsOptions {
  std::string kind = "polya";
  std::size_t n = 0;
  std::size_t count = 1000;
  std::size_t burnin = 20;
  bool burnin_given = false;
  std::string format = "json";
  bool degrees = false;
  std::size_t degree_columns = 10;
  bool raw = false;
  std::size_t trace = 0;
};

struct CountOptions {
  std::string perm;
  bool perm_given = false;
  std::size_t n = 0;
  std::string type;
  std::size_t polya = 0;
  bool formula = false;
  bool commuting = false;
};

struct ConstantsOptions {
  unsigned digits = 16;
  std::size_t truncation = 40;
  unsigned precision = 60;
  double epsilon = 1e-12;
  std::string format = "text";
};

struct RefdistOptions {
  std::string dist = "excursion";
  double from = 0;
  double to = 0;
  double step = 0;
  bool grid_given = false;
  std::size_t n = 100;
  double rho = 0.3383218568992077;
  double c = 1.1103;
  int terms = 20;
};

struct ValidateOptions {
  std::string level = "quick";
};

struct CodecOptions {
  std::string input = "-";
  std::string perm;
  bool perm_given = false;
  std::string type;
  std::size_t n = 0;
};

// Each returns the process exit code. `m.flags` is filled for the manifest.
int run_sample(const SampleOptions& o, const CommonOptions& c, Manifest& m);
int run_stats(const StatsOptions& o, const CommonOptions& c, Manifest& m);
int run_count(const CountOptions& o, const CommonOptions& c, Manifest& m);
int run_constants(const ConstantsOptions& o, const CommonOptions& c, Manifest& m);
int run_refdist(const RefdistOptions& o, const CommonOptions& c, Manifest& m);
int run_validate(const ValidateOptions& o, const CommonOptions& c, Manifest& m);
int run_encode(const CodecOptions& o, const CommonOptions& c, Manifest& m);
int run_decode(const CodecOptions& o, const CommonOptions& c, Manifest& m);

}  // namespace cli
