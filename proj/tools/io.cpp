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

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <thread>

#include "cli.hpp"

namespace cli {

void check(pt_status status, const std::string& context) {
  if (status == PT_OK) return;
  std::string msg = context + ": " + pt_status_name(status);
  const std::string detail = pt_last_error();
  if (!detail.empty()) msg += " (" + detail + ")";
  throw CliError(msg, kUsage);
}

std::string take_string(char* s) {
  std::unique_ptr<char, StringDeleter> owner(s);
  return s ? std::string(s) : std::string();
}

Output::Output(const std::string& path) : path_(path), os_(&std::cout) {
  if (path.empty() || path == "-") return;
  file_.open(path, std::ios::binary | std::ios::trunc);
  if (!file_) throw CliError("cannot open " + path + " for writing");
  os_ = &file_;
}

void Output::finish() {
  os_->flush();
  if (!*os_) throw CliError("write failed" + (is_file() ? " for " + path_ : std::string()));
  if (file_.is_open()) {
    file_.close();
    if (file_.fail()) throw CliError("closing " + path_ + " failed");
  }
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void append_uint(std::string& out, std::uint64_t v) {
  char buf[24];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

std::vector<std::uint32_t> tree_parents(const pt_tree* tree) {
  std::vector<std::uint32_t> parents(pt_tree_size(tree));
  check(pt_tree_parents(tree, parents.data(), parents.size()), "reading parents");
  return parents;
}

void write_parent_list(std::string& out, const std::vector<std::uint32_t>& parents) {
  append_uint(out, parents.size());
  out += '\n';
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (i) out += ' ';
    append_uint(out, parents[i]);
  }
  out += '\n';
}

bool read_parent_list(std::istream& in, std::vector<std::uint32_t>& parents) {
  std::uint64_t n = 0;
  if (!(in >> n)) {
    if (in.eof()) return false;
    throw CliError("parent list: expected a vertex count");
  }
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max()) {
    throw CliError("parent list: bad vertex count " + std::to_string(n));
  }
  parents.resize(n);
  for (auto& p : parents) {
    long long v = 0;
    if (!(in >> v)) throw CliError("parent list: truncated");
    if (v < 0 || static_cast<std::uint64_t>(v) > n) {
      throw CliError("parent list: parent " + std::to_string(v) + " out of range");
    }
    p = static_cast<std::uint32_t>(v);
  }
  return true;
}

unsigned default_threads() {
  if (const char* env = std::getenv("POLYATREE_THREADS")) {
    unsigned v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto r = std::from_chars(env, end, v);
    if (r.ec != std::errc() || r.ptr != end || v == 0) {
      throw CliError(std::string("POLYATREE_THREADS must be a positive integer, got '") + env +
                     "'");
    }
    return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void write_manifest(const std::string& path, const Manifest& m) {
  json j;
  j["subcommand"] = m.subcommand;
  j["argv"] = m.argv;
  j["flags"] = m.flags;
  j["seed"] = m.seed;
  j["threads"] = m.threads;
  j["library_version"] = pt_version();
  j["wall_seconds"] = m.wall_seconds;
  Output out(path);
  out.stream() << j.dump(2) << '\n';
  out.finish();
}

std::string manifest_path(const std::string& out, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (out.empty() || out == "-") return {};
  return out + ".manifest.json";
}

}  // namespace cli
