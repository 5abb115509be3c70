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

#include "commands.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cli {

namespace {

constexpr std::size_t kFlushBytes = 1 << 20;

pt_kind parse_kind(const std::string& kind) {
  if (kind == "polya") return PT_KIND_POLYA;
  if (kind == "cayley") return PT_KIND_CAYLEY;
  throw CliError("--kind must be polya or cayley, got '" + kind + "'");
}

pt_batch_config batch_config(const std::string& kind, std::size_t n, std::size_t count,
                             std::size_t burnin, bool burnin_given, const CommonOptions& c) {
  const pt_kind k = parse_kind(kind);
  if (k == PT_KIND_CAYLEY && burnin_given) {
    throw CliError("--burnin does not apply to --kind cayley");
  }
  if (n == 0) throw CliError("--n must be positive");
  if (count == 0) throw CliError("--count must be positive");
  pt_batch_config config{};
  config.kind = k;
  config.n = n;
  config.samples = count;
  config.burnin = k == PT_KIND_POLYA ? burnin : 0;
  config.seed = c.seed;
  config.threads = c.threads;
  return config;
}

std::string stats_header(std::size_t degree_columns) {
  std::string h = "height,path_length,width,leaf_count,max_degree,log_aut";
  for (std::size_t k = 1; k <= degree_columns; ++k) h += ",deg" + std::to_string(k);
  return h + '\n';
}

void append_stats_row(std::string& out, const pt_tree_stats& s, std::size_t degree_columns) {
  append_uint(out, s.height);
  out += ',';
  append_uint(out, s.path_length);
  out += ',';
  append_uint(out, s.width);
  out += ',';
  append_uint(out, s.leaf_count);
  out += ',';
  append_uint(out, s.max_degree);
  out += ',';
  out += format_double(s.log_aut);
  for (std::size_t k = 1; k <= degree_columns; ++k) {
    out += ',';
    append_uint(out, k < s.degree_hist_len ? s.degree_hist[k] : 0);
  }
  out += '\n';
}

json stats_json(std::size_t index, const pt_tree_stats& s) {
  json j;
  j["index"] = index;
  j["n"] = s.n;
  j["height"] = s.height;
  j["path_length"] = s.path_length;
  j["width"] = s.width;
  j["leaf_count"] = s.leaf_count;
  j["max_degree"] = s.max_degree;
  j["max_out_degree"] = s.max_out_degree;
  j["log_aut"] = s.log_aut;
  j["degree_hist"] = std::vector<std::uint32_t>(s.degree_hist, s.degree_hist + s.degree_hist_len);
  return j;
}

// State shared with the C callbacks. Exceptions never cross the C boundary;
// they are parked here and rethrown afterwards.
struct Sink {
  std::ostream* os = nullptr;
  std::string buf;
  std::size_t degree_columns = 0;
  bool json_lines = false;
  std::exception_ptr error;

  void maybe_flush() {
    if (buf.size() >= kFlushBytes) flush();
  }
  void flush() {
    os->write(buf.data(), static_cast<std::streamsize>(buf.size()));
    buf.clear();
  }
};

int on_stats_row(void* user, size_t index, const pt_tree_stats* s) {
  auto& sink = *static_cast<Sink*>(user);
  try {
    if (sink.json_lines) {
      sink.buf += stats_json(index, *s).dump();
      sink.buf += '\n';
    } else {
      append_stats_row(sink.buf, *s, sink.degree_columns);
    }
    sink.maybe_flush();
    return 0;
  } catch (...) {
    sink.error = std::current_exception();
    return 1;
  }
}

int on_tree(void* user, size_t, const pt_tree* tree) {
  auto& sink = *static_cast<Sink*>(user);
  try {
    write_parent_list(sink.buf, tree_parents(tree));
    sink.maybe_flush();
    return 0;
  } catch (...) {
    sink.error = std::current_exception();
    return 1;
  }
}

void finish_callback_run(pt_status status, Sink& sink, const std::string& what) {
  if (sink.error) std::rethrow_exception(sink.error);
  check(status, what);
  sink.flush();
}

PermPtr make_perm(const std::string& perm, bool perm_given, std::size_t n,
                  const std::string& type) {
  pt_perm* p = nullptr;
  if (perm_given && !type.empty()) throw CliError("give either --perm or --type, not both");
  if (perm_given) {
    if (n == 0) throw CliError("--perm needs --n");
    check(pt_perm_parse(perm.c_str(), n, &p), "parsing --perm");
  } else if (!type.empty()) {
    check(pt_perm_from_cycle_type(type.c_str(), &p), "parsing --type");
    if (n != 0 && pt_perm_size(p) != n) {
      pt_perm_free(p);
      throw CliError("--type describes " + std::to_string(pt_perm_size(p)) +
                     " points but --n is " + std::to_string(n));
    }
  } else {
    return nullptr;
  }
  return PermPtr(p);
}

json moments_json(const pt_moments& m) {
  json j;
  j["count"] = m.count;
  j["mean"] = m.mean;
  j["variance"] = m.variance;
  j["stddev"] = std::sqrt(m.variance);
  j["min"] = m.min;
  j["max"] = m.max;
  return j;
}

struct FeatureName {
  pt_feature feature;
  const char* name;
};

constexpr FeatureName kFeatures[] = {
    {PT_FEATURE_HEIGHT, "height"},
    {PT_FEATURE_PATH_LENGTH, "path_length"},
    {PT_FEATURE_WIDTH, "width"},
    {PT_FEATURE_LEAF_COUNT, "leaf_count"},
    {PT_FEATURE_MAX_DEGREE, "max_degree"},
    {PT_FEATURE_MAX_OUT_DEGREE, "max_out_degree"},
    {PT_FEATURE_LOG_AUT, "log_aut"},
    {PT_FEATURE_HEIGHT_NORM, "height_norm"},
    {PT_FEATURE_WIDTH_NORM, "width_norm"},
    {PT_FEATURE_PATH_LENGTH_NORM, "path_length_norm"},
    {PT_FEATURE_LEAF_FRACTION, "leaf_fraction"},
    {PT_FEATURE_LOG_AUT_NORM, "log_aut_norm"},
};

json histogram_json(const pt_batch* batch, pt_histogram which) {
  size_t len = 0;
  check(pt_batch_histogram(batch, which, nullptr, nullptr, 0, &len), "histogram");
  std::vector<std::uint64_t> values(len), counts(len);
  check(pt_batch_histogram(batch, which, values.data(), counts.data(), len, &len), "histogram");
  json bins = json::array();
  for (std::size_t i = 0; i < len; ++i) bins.push_back({values[i], counts[i]});
  return bins;
}

double degree_fraction(const pt_batch* batch, std::size_t k) {
  double f = 0;
  check(pt_batch_degree_fraction(batch, k, &f), "degree fraction");
  return f;
}

void emit_text(const CommonOptions& c, const std::string& text) {
  Output out(c.out);
  out.stream() << text;
  out.finish();
}

}  // namespace

int run_sample(const SampleOptions& o, const CommonOptions& c, Manifest& m) {
  m.flags = {{"kind", o.kind},     {"n", o.n},           {"count", o.count},
             {"burnin", o.burnin}, {"format", o.format}, {"degree_columns", o.degree_columns}};
  const auto config = batch_config(o.kind, o.n, o.count, o.burnin, o.burnin_given, c);
  if (o.format != "parentlist" && o.format != "csv" && o.format != "json") {
    throw CliError("--format must be parentlist, csv or json");
  }
  if (o.degree_columns && o.format != "csv") throw CliError("--degree-columns needs --format csv");
  Output out(c.out);
  Sink sink;
  sink.os = &out.stream();
  sink.degree_columns = o.degree_columns;
  sink.json_lines = o.format == "json";
  if (o.format == "parentlist") {
    finish_callback_run(pt_batch_sample_trees(&config, on_tree, &sink), sink, "sampling");
  } else {
    if (o.format == "csv") sink.buf = stats_header(o.degree_columns);
    finish_callback_run(pt_batch_run(&config, on_stats_row, &sink, nullptr), sink, "sampling");
  }
  out.finish();
  return kOk;
}

int run_stats(const StatsOptions& o, const CommonOptions& c, Manifest& m) {
  m.flags = {{"kind", o.kind},     {"n", o.n},
             {"count", o.count},   {"burnin", o.burnin},
             {"format", o.format}, {"degrees", o.degrees},
             {"degree_columns", o.degree_columns}, {"raw", o.raw},
             {"trace", o.trace}};
  if (o.format != "json" && o.format != "csv") throw CliError("--format must be json or csv");
  Output out(c.out);
  Sink sink;
  sink.os = &out.stream();
  sink.degree_columns = o.degrees ? o.degree_columns : 0;

  if (o.trace > 0) {
    if (parse_kind(o.kind) != PT_KIND_POLYA) throw CliError("--trace needs --kind polya");
    if (o.n == 0) throw CliError("--n must be positive");
    // Row i holds X_i; X_0 is the star.
    sink.buf = "step," + stats_header(sink.degree_columns);
    auto cb = [](void* user, size_t index, const pt_tree_stats* s) -> int {
      auto& sk = *static_cast<Sink*>(user);
      append_uint(sk.buf, index);
      sk.buf += ',';
      return on_stats_row(user, index, s);
    };
    finish_callback_run(pt_chain_trace(o.n, o.trace, c.seed, cb, &sink), sink, "chain trace");
    out.finish();
    return kOk;
  }

  const auto config = batch_config(o.kind, o.n, o.count, o.burnin, o.burnin_given, c);
  if (o.raw) {
    sink.buf = stats_header(sink.degree_columns);
    finish_callback_run(pt_batch_run(&config, on_stats_row, &sink, nullptr), sink, "sampling");
    out.finish();
    return kOk;
  }

  pt_batch* raw_batch = nullptr;
  check(pt_batch_run(&config, nullptr, nullptr, &raw_batch), "sampling");
  BatchPtr batch(raw_batch);
  std::ostream& os = out.stream();
  if (o.format == "csv") {
    if (o.degrees) {
      os << "degree,fraction\n";
      for (std::size_t k = 1; k <= o.degree_columns; ++k) {
        os << k << ',' << format_double(degree_fraction(batch.get(), k)) << '\n';
      }
    } else {
      os << "feature,count,mean,variance,stddev,min,max\n";
      for (const auto& f : kFeatures) {
        pt_moments mo{};
        check(pt_batch_moments(batch.get(), f.feature, &mo), "moments");
        os << f.name << ',' << mo.count << ',' << format_double(mo.mean) << ','
           << format_double(mo.variance) << ',' << format_double(std::sqrt(mo.variance)) << ','
           << format_double(mo.min) << ',' << format_double(mo.max) << '\n';
      }
    }
  } else {
    json j;
    j["kind"] = o.kind;
    j["n"] = o.n;
    j["samples"] = o.count;
    j["burnin"] = config.burnin;
    j["seed"] = c.seed;
    json features = json::object();
    for (const auto& f : kFeatures) {
      pt_moments mo{};
      check(pt_batch_moments(batch.get(), f.feature, &mo), "moments");
      features[f.name] = moments_json(mo);
    }
    j["features"] = features;
    json hists = json::object();
    hists["height"] = histogram_json(batch.get(), PT_HIST_HEIGHT);
    hists["width"] = histogram_json(batch.get(), PT_HIST_WIDTH);
    hists["max_degree"] = histogram_json(batch.get(), PT_HIST_MAX_DEGREE);
    hists["max_out_degree"] = histogram_json(batch.get(), PT_HIST_MAX_OUT_DEGREE);
    hists["degree"] = histogram_json(batch.get(), PT_HIST_DEGREE);
    j["histograms"] = hists;
    json fits = json::object();
    for (auto [method, name] : {std::pair{PT_HEIGHT_FIT_SHAPE, "shape"},
                                std::pair{PT_HEIGHT_FIT_LIKELIHOOD, "likelihood"}}) {
      double mu = 0, sigma = 0;
      check(pt_batch_height_fit(batch.get(), method, &mu, &sigma), "height fit");
      fits[name] = {{"mu", mu}, {"sigma", sigma}};
    }
    j["height_fit"] = fits;
    if (o.degrees) {
      json fr = json::array();
      for (std::size_t k = 1; k <= o.degree_columns; ++k) {
        fr.push_back({{"degree", k}, {"fraction", degree_fraction(batch.get(), k)}});
      }
      j["degree_fractions"] = fr;
    }
    os << j.dump(2) << '\n';
  }
  out.finish();
  return kOk;
}

int run_count(const CountOptions& o, const CommonOptions& c, Manifest& m) {
  m.flags = {{"perm", o.perm_given ? json(o.perm) : json(nullptr)},
             {"n", o.n},
             {"type", o.type},
             {"polya", o.polya},
             {"formula", o.formula},
             {"commuting", o.commuting}};
  std::ostringstream text;
  if (o.polya > 0) {
    if (o.perm_given || !o.type.empty()) throw CliError("--polya excludes --perm and --type");
    char* s = nullptr;
    check(pt_polya_counts(o.polya, &s), "counting");
    std::istringstream list(take_string(s));
    text << "n,t_n\n";
    std::string item;
    for (std::size_t i = 1; std::getline(list, item, ','); ++i) text << i << ',' << item << '\n';
    emit_text(c, text.str());
    return kOk;
  }
  PermPtr perm = make_perm(o.perm, o.perm_given, o.n, o.type);
  if (!perm) {
    if (o.n == 0) throw CliError("count needs --perm with --n, --type, or --polya");
    pt_perm* p = nullptr;
    check(pt_perm_parse("()", o.n, &p), "identity");
    perm.reset(p);
  }
  char* s = nullptr;
  check(pt_count_invariant_trees(perm.get(), &s), "counting");
  text << take_string(s) << '\n';
  if (o.formula) {
    check(pt_count_formula(perm.get(), &s), "formula");
    text << "formula: " << take_string(s) << '\n';
  }
  if (o.commuting) {
    check(pt_count_commuting_functions(perm.get(), &s), "commuting functions");
    text << "commuting_functions: " << take_string(s) << '\n';
  }
  emit_text(c, text.str());
  return kOk;
}

int run_constants(const ConstantsOptions& o, const CommonOptions& c, Manifest& m) {
  m.flags = {{"digits", o.digits},
             {"truncation", o.truncation},
             {"precision", o.precision},
             {"epsilon", o.epsilon},
             {"format", o.format}};
  if (o.format != "text" && o.format != "json" && o.format != "csv") {
    throw CliError("--format must be text, csv or json");
  }
  pt_constants k{};
  check(pt_otter_constants(o.truncation, o.precision, o.epsilon, o.digits, &k), "constants");
  std::ostringstream text;
  if (o.format == "text") {
    text << "rho = " << k.rho << "\nb = " << k.b << "\nsigma = " << k.sigma << '\n';
  } else if (o.format == "csv") {
    text << "name,value\nrho," << k.rho << "\nb," << k.b << "\nsigma," << k.sigma << '\n';
  } else {
    // Strings keep every requested digit; doubles would not.
    json j = {{"rho", k.rho}, {"b", k.b}, {"sigma", k.sigma}, {"digits", o.digits}};
    text << j.dump(2) << '\n';
  }
  emit_text(c, text.str());
  return kOk;
}

int run_refdist(const RefdistOptions& o, const CommonOptions& c, Manifest& m) {
  double from = o.from, to = o.to, step = o.step;
  const char* column = "cdf";
  const char* xname = "x";
  if (o.dist == "excursion") {
    if (!o.grid_given) from = 0.1, to = 3.0, step = 0.1;
  } else if (o.dist == "width") {
    if (!o.grid_given) from = 0.2, to = 6.0, step = 0.2;
  } else if (o.dist == "airy") {
    column = "density";
    if (!o.grid_given) from = 0.1, to = 3.0, step = 0.1;
  } else if (o.dist == "maxdeg") {
    xname = "m";
    if (!o.grid_given) {
      const double location = std::log(static_cast<double>(o.n)) / std::log(1.0 / o.rho);
      from = 1;
      to = std::ceil(location) + 6;
      step = 1;
    }
  } else {
    throw CliError("--dist must be excursion, width, airy or maxdeg");
  }
  if (!(step > 0) || !(to >= from)) throw CliError("grid needs --step > 0 and --to >= --from");
  const double span = (to - from) / step;
  if (span > 1e7) throw CliError("grid has more than 10^7 points");
  m.flags = {{"dist", o.dist}, {"from", from},   {"to", to},       {"step", step},
             {"n", o.n},       {"rho", o.rho},   {"c", o.c},       {"terms", o.terms}};
  std::string buf = std::string(xname) + ',' + column + '\n';
  const auto points = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = from + static_cast<double>(i) * step;
    double y = 0;
    if (o.dist == "excursion") {
      check(pt_excursion_max_cdf(x, &y), "excursion_max_cdf");
    } else if (o.dist == "width") {
      check(pt_width_max_cdf(x, &y), "width_max_cdf");
    } else if (o.dist == "airy") {
      check(pt_airy_area_density(x, o.terms, &y), "airy_area_density");
    } else {
      check(pt_max_degree_cdf(o.n, o.rho, o.c, x, &y), "max_degree_cdf");
    }
    buf += format_double(x);
    buf += ',';
    buf += format_double(y);
    buf += '\n';
  }
  emit_text(c, buf);
  return kOk;
}

int run_validate(const ValidateOptions& o, const CommonOptions& c, Manifest& m) {
  m.flags = {{"level", o.level}};
  Output out(c.out);
  struct Ctx {
    std::ostream* os;
  } ctx{&out.stream()};
  int passed = 0;
  check(pt_validate(
            o.level.c_str(), c.seed,
            [](void* user, const char* line) {
              auto& os = *static_cast<Ctx*>(user)->os;
              os << line << '\n';
              os.flush();
            },
            &ctx, &passed),
        "validate");
  out.stream() << (passed ? "ALL PASSED" : "SOME CHECKS FAILED") << '\n';
  out.finish();
  return passed ? kOk : kValidationFailure;
}

namespace {

// Opens --input ("-" for stdin).
struct Input {
  std::ifstream file;
  std::istream* is = &std::cin;
  explicit Input(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path, std::ios::binary);
    if (!file) throw CliError("cannot open " + path);
    is = &file;
  }
};

}  // namespace

int run_encode(const CodecOptions& o, const CommonOptions& c, Manifest& m) {
  m.flags = {{"input", o.input},
             {"perm", o.perm_given ? json(o.perm) : json(nullptr)},
             {"type", o.type},
             {"n", o.n}};
  Input in(o.input);
  Output out(c.out);
  std::string buf;
  std::vector<std::uint32_t> parents;
  PermPtr perm;
  std::size_t record = 0;
  while (read_parent_list(*in.is, parents)) {
    ++record;
    pt_tree* raw = nullptr;
    check(pt_tree_from_parents(parents.data(), parents.size(), &raw),
          "tree " + std::to_string(record));
    TreePtr tree(raw);
    if (o.perm_given || !o.type.empty()) {
      if (!perm) perm = make_perm(o.perm, o.perm_given, o.n ? o.n : parents.size(), o.type);
      char* s = nullptr;
      check(pt_sigma_prufer_encode(tree.get(), perm.get(), &s), "tree " + std::to_string(record));
      buf += take_string(s);
    } else {
      std::vector<std::uint32_t> code(parents.size() > 2 ? parents.size() - 2 : 0);
      size_t len = 0;
      check(pt_cayley_encode(tree.get(), code.data(), code.size(), &len),
            "tree " + std::to_string(record));
      for (std::size_t i = 0; i < len; ++i) {
        if (i) buf += ' ';
        append_uint(buf, code[i]);
      }
    }
    buf += '\n';
    if (buf.size() >= kFlushBytes) {
      out.stream() << buf;
      buf.clear();
    }
  }
  out.stream() << buf;
  out.finish();
  return kOk;
}

int run_decode(const CodecOptions& o, const CommonOptions& c, Manifest& m) {
  m.flags = {{"input", o.input},
             {"perm", o.perm_given ? json(o.perm) : json(nullptr)},
             {"type", o.type},
             {"n", o.n}};
  Input in(o.input);
  Output out(c.out);
  PermPtr perm = make_perm(o.perm, o.perm_given, o.n, o.type);
  std::string buf;
  std::string line;
  std::size_t record = 0;
  while (std::getline(*in.is, line)) {
    ++record;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pt_tree* raw = nullptr;
    const std::string where = "line " + std::to_string(record);
    if (perm) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      check(pt_sigma_prufer_decode(line.c_str(), perm.get(), &raw), where);
    } else {
      std::istringstream fields(line);
      std::vector<std::uint32_t> code;
      long long v = 0;
      while (fields >> v) {
        if (v < 1 || v > 0xffffffffLL) throw CliError(where + ": code entry out of range");
        code.push_back(static_cast<std::uint32_t>(v));
      }
      if (!fields.eof()) throw CliError(where + ": expected integers");
      // An empty line is the code of a tree on two vertices unless --n says otherwise.
      const std::size_t n = o.n ? o.n : code.size() + 2;
      check(pt_cayley_decode(code.data(), code.size(), n, &raw), where);
    }
    TreePtr tree(raw);
    write_parent_list(buf, tree_parents(tree.get()));
    if (buf.size() >= kFlushBytes) {
      out.stream() << buf;
      buf.clear();
    }
  }
  out.stream() << buf;
  out.finish();
  return kOk;
}

}  // namespace cli
