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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "aisim/config.hpp"

namespace aisim {

/// Everything needed to reproduce one training run.
struct RunConfig {
  ExperimentConfig experiment;
  TrainConfig train;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

using KeyValues = std::map<std::string, std::string, std::less<>>;

/// Parses `section.key = value` lines. `#` starts a comment; blank lines are
/// ignored. Throws ConfigError on malformed lines or duplicate keys.
KeyValues parse_key_values(std::string_view text);

/// Applies recognized keys; throws ConfigError listing every unknown key, and
/// on unparsable values. The result is validated.
void apply_key_values(const KeyValues& kv, RunConfig& run);

/// All recognized keys in canonical order.
std::vector<std::string> config_keys();

/// Canonical text form: every key, sorted, one `key = value` line each,
/// doubles printed with 17 significant digits so the text round-trips exactly.
std::string format_config(const RunConfig& run);
RunConfig parse_config(std::string_view text);
RunConfig load_config_file(const std::filesystem::path& path);

/// FNV-1a 64 of format_config(run).
std::uint64_t config_hash(const RunConfig& run);
std::string hash_hex(std::uint64_t hash);

/// Keys whose values differ between two configs.
std::vector<std::string> differing_keys(const RunConfig& a, const RunConfig& b);

}  // namespace aisim
