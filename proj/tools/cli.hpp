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

// Shared pieces of the polyatree command-line tool. Everything here goes
// through the C API in polyatree/polyatree.h.

#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyatree/polyatree.h"

namespace cli {

using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kValidationFailure = 1, kUsage = 2 };

// Any failure that should end the process with `code`.
class CliError : public std::runtime_error {
 public:
  CliError(const std::string& what, int code = kUsage) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

// Throws CliError carrying pt_last_error() unless status is PT_OK.
void check(pt_status status, const std::string& context);

struct TreeDeleter {
  void operator()(pt_tree* t) const { pt_tree_free(t); }
};
struct PermDeleter {
  void operator()(pt_perm* p) const { pt_perm_free(p); }
};
struct BatchDeleter {
  void operator()(pt_batch* b) const { pt_batch_free(b); }
};
struct StringDeleter {
  void operator()(char* s) const { pt_string_free(s); }
};
using TreePtr = std::unique_ptr<pt_tree, TreeDeleter>;
using PermPtr = std::unique_ptr<pt_perm, PermDeleter>;
using BatchPtr = std::unique_ptr<pt_batch, BatchDeleter>;

// Takes ownership of a string returned by the library.
std::string take_string(char* s);

// Output sink: a file opened in binary mode, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path);
  std::ostream& stream() { return *os_; }
  bool is_file() const { return file_.is_open(); }
  // Flushes and throws CliError if any write failed.
  void finish();

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_;
};

// Shortest round-trip decimal form of x.
std::string format_double(double x);
void append_uint(std::string& out, std::uint64_t v);

std::vector<std::uint32_t> tree_parents(const pt_tree* tree);
void write_parent_list(std::string& out, const std::vector<std::uint32_t>& parents);

// Reads "n" then n parents; returns false at end of input.
bool read_parent_list(std::istream& in, std::vector<std::uint32_t>& parents);

// Default worker count: POLYATREE_THREADS if set, else the hardware count.
unsigned default_threads();

// Run metadata written next to a data file as <out>.manifest.json.
struct Manifest {
  std::string subcommand;
  std::vector<std::string> argv;  // arguments after the program name
  json flags = json::object();
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double wall_seconds = 0;
};

void write_manifest(const std::string& path, const Manifest& m);
// Path for the manifest of data file `out`; empty when writing to stdout.
std::string manifest_path(const std::string& out, const std::string& explicit_path);

}  // namespace cli
