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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "aisim/config_io.hpp"
#include "aisim/dataset.hpp"
#include "aisim/training.hpp"

namespace aisim {

enum class SweepAxis { Snr, MetaAtoms, Layers, Width };

std::string_view to_string(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view name);
/// Default grid for an axis (SNR in dB, M, L, width).
std::vector<double> default_axis_values(SweepAxis a);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Snr;
  std::vector<double> values;
  std::vector<Scheme> schemes;
  RunConfig base;
  std::vector<std::uint64_t> seeds{1};
};

/// Reads a key = value file: `sweep.axis`, `sweep.values`, `sweep.schemes`,
/// `sweep.seeds` (comma-separated lists), every other key is a RunConfig key.
SweepSpec parse_sweep_spec(std::string_view text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// The base config with one axis value, scheme and seed applied. The width
/// axis sets N_t = N_s = N_r = M = value; the image must stay divisible by 2 N_t.
RunConfig apply_axis(const RunConfig& base, SweepAxis axis, double value, Scheme scheme,
                     std::uint64_t seed);

struct ResultRow {
  Scheme scheme = Scheme::RelayNonlinear;
  SweepAxis axis = SweepAxis::Snr;
  double value = 0.0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  int epochs = 0;
  double wall_seconds = 0.0;
  std::string rng_id;
  std::string config_hash;
  /// Nonempty when the cell failed; written as `error:<message>` in the
  /// accuracy column.
  std::string error;
};

inline constexpr std::string_view kResultsHeader =
    "scheme,axis,value,seed,accuracy,epochs,wall_seconds,rng_id,config_hash";

std::string format_result_row(const ResultRow& row);
ResultRow parse_result_row(std::string_view line);
/// Rows of a results file; a missing file gives an empty list.
std::vector<ResultRow> read_results(const std::filesystem::path& path);
/// Appends one row under an advisory file lock, writing the header first if
/// the file is new or empty.
void append_result(const std::filesystem::path& path, const ResultRow& row);

struct CellOutcome {
  TrainResult result;
  ResultRow row;
};

/// Trains and evaluates one (config, seed) cell.
CellOutcome run_cell(const RunConfig& run, SweepAxis axis, double value, const Dataset& train_set,
                     const Dataset& test_set, const EpochCallback& on_epoch = {});

struct SweepCell {
  Scheme scheme;
  double value;
  std::uint64_t seed;
  RunConfig run;
};

std::vector<SweepCell> expand_sweep(const SweepSpec& spec);

/// Runs every cell whose config hash has no successful row in `results_csv`
/// yet, appending a row as each finishes. Failed cells get an error row and
/// the sweep continues. Returns the rows of all cells in expansion order.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, const Dataset& train_set,
                                 const Dataset& test_set, const std::filesystem::path& results_csv,
                                 std::ostream* log = nullptr);

}  // namespace aisim
