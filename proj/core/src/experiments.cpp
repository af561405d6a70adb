// Copyright 2026 The aisim Authors
//
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

#include "aisim/experiments.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "aisim/errors.hpp"
#include "aisim/rng.hpp"

namespace aisim {
namespace {

constexpr std::array<std::pair<SweepAxis, std::string_view>, 4> kAxes{{
    {SweepAxis::Snr, "snr"},
    {SweepAxis::MetaAtoms, "meta_atoms"},
    {SweepAxis::Layers, "layers"},
    {SweepAxis::Width, "width"},
}};

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    std::string item(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                    : comma - pos));
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t as_count(double v, std::string_view axis) {
  if (!(v >= 1.0) || std::floor(v) != v) {
    throw ConfigError(std::string(axis) + " sweep value " + fmt_value(v) +
                      " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

std::string_view to_string(SweepAxis a) {
  for (const auto& [v, n] : kAxes)
    if (v == a) return n;
  return "?";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (const auto& [v, n] : kAxes)
    if (n == name) return v;
  throw ConfigError("unknown sweep axis '" + std::string(name) +
                    "' (expected snr, meta_atoms, layers or width)");
}

std::vector<double> default_axis_values(SweepAxis a) {
  switch (a) {
    case SweepAxis::Snr: return {-20, -10, 0, 10, 20, 30};
    case SweepAxis::MetaAtoms: return {4, 16, 36, 64};
    case SweepAxis::Layers: return {1, 2, 3, 4};
    case SweepAxis::Width: return {4, 8, 16, 32};
  }
  return {};
}

SweepSpec parse_sweep_spec(std::string_view text) {
  KeyValues kv = parse_key_values(text);
  SweepSpec spec;
  auto take = [&](const char* key) -> std::string {
    const auto it = kv.find(key);
    if (it == kv.end()) return {};
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const std::string axis = take("sweep.axis");
  if (axis.empty()) throw ConfigError("sweep spec: sweep.axis is required");
  spec.axis = parse_sweep_axis(axis);
  const std::string values = take("sweep.values");
  if (values.empty()) {
    spec.values = default_axis_values(spec.axis);
  } else {
    for (const auto& v : split_list(values)) {
      char* end = nullptr;
      spec.values.push_back(std::strtod(v.c_str(), &end));
      if (end != v.c_str() + v.size()) throw ConfigError("sweep.values: bad number '" + v + "'");
    }
  }
  const std::string schemes = take("sweep.schemes");
  if (schemes.empty()) {
    spec.schemes = {Scheme::RelayNonlinear, Scheme::RelayLinear, Scheme::RelayNoCP,
                    Scheme::NoOtaNonlinear, Scheme::NoOtaLinear};
  } else {
    for (const auto& s : split_list(schemes)) spec.schemes.push_back(parse_scheme(s));
  }
  const std::string seeds = take("sweep.seeds");
  if (!seeds.empty()) {
    spec.seeds.clear();
    for (const auto& s : split_list(seeds)) spec.seeds.push_back(std::stoull(s));
  }
  apply_key_values(kv, spec.base);
  if (spec.values.empty() || spec.schemes.empty() || spec.seeds.empty()) {
    throw ConfigError("sweep spec: values, schemes and seeds must be nonempty");
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_spec(ss.str());
}

RunConfig apply_axis(const RunConfig& base, SweepAxis axis, double value, Scheme scheme,
                     std::uint64_t seed) {
  RunConfig run = base;
  run.experiment.scheme = scheme;
  run.train.seed = seed;
  switch (axis) {
    case SweepAxis::Snr: run.experiment.snr_db = value; break;
    case SweepAxis::MetaAtoms: run.experiment.meta_atoms = as_count(value, "meta_atoms"); break;
    case SweepAxis::Layers: run.experiment.layers = as_count(value, "layers"); break;
    case SweepAxis::Width: {
      const std::size_t w = as_count(value, "width");
      run.experiment.n_t = run.experiment.n_s = run.experiment.n_r = w;
      run.experiment.meta_atoms = w;
      break;
    }
  }
  run.experiment.validate();
  return run;
}

std::string format_result_row(const ResultRow& row) {
  std::ostringstream out;
  out << to_string(row.scheme) << ',' << to_string(row.axis) << ',' << fmt_value(row.value) << ','
      << row.seed << ',';
  if (row.error.empty()) {
    out << fmt_value(row.accuracy);
  } else {
    out << "error:" << sanitize(row.error);
  }
  out << ',' << row.epochs << ',' << fmt_value(row.wall_seconds) << ',' << row.rng_id << ','
      << row.config_hash;
  return out.str();
}

ResultRow parse_result_row(std::string_view line) {
  std::vector<std::string> cols;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cols.emplace_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                      : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (cols.size() != 9) throw ConfigError("results row has " + std::to_string(cols.size()) + " columns");
  ResultRow row;
  row.scheme = parse_scheme(cols[0]);
  row.axis = parse_sweep_axis(cols[1]);
  row.value = std::stod(cols[2]);
  row.seed = std::stoull(cols[3]);
  if (cols[4].rfind("error:", 0) == 0) {
    row.error = cols[4].substr(6);
  } else {
    row.accuracy = std::stod(cols[4]);
  }
  row.epochs = std::stoi(cols[5]);
  row.wall_seconds = std::stod(cols[6]);
  row.rng_id = cols[7];
  row.config_hash = cols[8];
  return row;
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  std::vector<ResultRow> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      if (line == kResultsHeader) continue;
    }
    if (!line.empty()) rows.push_back(parse_result_row(line));
  }
  return rows;
}

void append_result(const std::filesystem::path& path, const ResultRow& row) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw std::runtime_error("cannot open " + path.string());
  ::flock(fd, LOCK_EX);
  std::string text;
  if (::lseek(fd, 0, SEEK_END) == 0) text = std::string(kResultsHeader) + "\n";
  text += format_result_row(row) + "\n";
  const ssize_t written = ::write(fd, text.data(), text.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != static_cast<ssize_t>(text.size())) {
    throw std::runtime_error("short write to " + path.string());
  }
}

CellOutcome run_cell(const RunConfig& run, SweepAxis axis, double value, const Dataset& train_set,
                     const Dataset& test_set, const EpochCallback& on_epoch) {
  CellOutcome out;
  out.row.scheme = run.experiment.scheme;
  out.row.axis = axis;
  out.row.value = value;
  out.row.seed = run.train.seed;
  out.row.epochs = run.train.epochs;
  out.row.rng_id = std::string(SeededRng::kAlgorithmId);
  out.row.config_hash = hash_hex(config_hash(run));
  out.result = train(run.experiment, run.train, train_set, test_set, on_epoch);
  double wall = 0.0;
  for (const auto& m : out.result.metrics) wall += m.wall_seconds;
  out.row.wall_seconds = wall;
  if (out.result.metrics.empty()) {
    // Untrained: evaluate the initial parameters.
    const FixedPropagation fixed = build_propagation(run.experiment);
    out.row.accuracy = evaluate(out.result.params, run.experiment, fixed,
                                test_set.head(run.train.test_limit), run.train.eval_draws,
                                SeededRng(run.train.seed), run.train.eval_chunk);
  } else {
    out.row.accuracy = out.result.metrics.back().test_accuracy;
  }
  return out;
}

std::vector<SweepCell> expand_sweep(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  for (Scheme scheme : spec.schemes)
    for (double value : spec.values)
      for (std::uint64_t seed : spec.seeds)
        cells.push_back({scheme, value, seed, apply_axis(spec.base, spec.axis, value, scheme, seed)});
  return cells;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const Dataset& train_set,
                                 const Dataset& test_set, const std::filesystem::path& results_csv,
                                 std::ostream* log) {
  std::map<std::string, ResultRow> done;
  for (const auto& row : read_results(results_csv))
    if (row.error.empty()) done[row.config_hash] = row;

  std::vector<ResultRow> rows;
  for (const SweepCell& cell : expand_sweep(spec)) {
    const std::string hash = hash_hex(config_hash(cell.run));
    if (const auto it = done.find(hash); it != done.end()) {
      if (log) *log << "skip " << to_string(cell.scheme) << " " << fmt_value(cell.value) << " (done)\n";
      rows.push_back(it->second);
      continue;
    }
    ResultRow row;
    try {
      if (log) *log << "run  " << to_string(cell.scheme) << " " << fmt_value(cell.value) << "\n";
      row = run_cell(cell.run, spec.axis, cell.value, train_set, test_set).row;
    } catch (const std::exception& e) {
      row.scheme = cell.scheme;
      row.axis = spec.axis;
      row.value = cell.value;
      row.seed = cell.seed;
      row.epochs = cell.run.train.epochs;
      row.rng_id = std::string(SeededRng::kAlgorithmId);
      row.config_hash = hash;
      row.error = e.what();
    }
    append_result(results_csv, row);
    done.emplace(hash, row);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace aisim
