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
#include <span>
#include <string>
#include <vector>

#include "aisim/config_io.hpp"
#include "aisim/params.hpp"

namespace aisim {

/// Binary checkpoint, all integers and floats little-endian:
///
///   magic        8 bytes  "AISIMCKP"
///   version      u32      1
///   config       u32 length + bytes   canonical `key = value` text
///   rng id       u32 length + bytes
///   field count  u32
///   field table  per field: u32 name length, name, u8 kind (0 angle, 1 real,
///                2 complex), u64 rows, u64 cols, u64 value count
///   payload      per field, in table order: value count f64 (complex fields
///                as interleaved re, im)
///
/// Nothing may follow the payload.
struct Checkpoint {
  RunConfig run;
  std::string rng_id;
  ModelParams params;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> serialize_checkpoint(const Checkpoint& ckpt);
/// Throws ParseError on malformed bytes and ConfigError when the stored
/// parameter shapes disagree with the stored config.
Checkpoint parse_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace aisim
