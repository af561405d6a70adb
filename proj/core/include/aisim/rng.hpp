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
#include <random>
#include <string_view>

namespace aisim {

/// One independent random stream. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; the distributions below are
/// implemented here rather than through <random> distributions, whose
/// algorithms vary between standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, n), unbiased (rejection sampling). n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal by the Box-Muller transform; draws come in pairs.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Root of all randomness in a run. Named streams are seeded from
/// splitmix64(seed ^ fnv1a64(name) + index), so drawing from one stream never
/// perturbs another.
class SeededRng {
 public:
  static constexpr std::string_view kAlgorithmId =
      "mt19937_64+splitmix64-fnv1a-streams+box-muller";

  explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  RngStream stream(std::string_view name, std::uint64_t index = 0) const;

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace aisim
