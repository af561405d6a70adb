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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "aisim/nonlinear.hpp"

namespace aisim {

enum class Scheme { RelayNonlinear, RelayLinear, RelayNoCP, NoOtaNonlinear, NoOtaLinear };

std::string_view to_string(Scheme s);
/// Accepts the canonical names ("relay-nonlinear", ...). Throws ConfigError.
Scheme parse_scheme(std::string_view name);

bool uses_relay(Scheme s);
bool uses_pseudoinverse(Scheme s);
bool is_linear(Scheme s);

/// How the relay output reaches the receiver-side stack.
///  FadingThenDiffraction: N_s x N_s Rayleigh G_r, then the near-field
///    N_s-ULA -> first-layer diffraction matrix.
///  FadingDirect: G_r is M x N_s and feeds the first layer directly.
enum class RxInputMode { FadingThenDiffraction, FadingDirect };

std::string_view to_string(RxInputMode m);
RxInputMode parse_rx_input_mode(std::string_view name);

/// Whether the relay-to-receiver fading G_r is redrawn with every channel
/// draw (PerDraw) or is one realization shared by all draws (Static).
enum class RxFading { PerDraw, Static };

std::string_view to_string(RxFading f);
RxFading parse_rx_fading(std::string_view name);

enum class PixelScaling { Unit, Standardize };

std::string_view to_string(PixelScaling p);
PixelScaling parse_pixel_scaling(std::string_view name);

/// Everything that shapes the physical model. Together with a TrainConfig
/// and a seed it fully determines a run.
struct ExperimentConfig {
  std::size_t n_t = 14;
  std::size_t n_s = 14;
  std::size_t n_r = 14;
  std::size_t meta_atoms = 16;  // M
  std::size_t layers = 1;       // L, passive layers per side

  std::size_t image_channels = 1;
  std::size_t image_height = 28;
  std::size_t image_width = 28;
  std::size_t num_classes = 10;

  double snr_db = 0.0;
  Scheme scheme = Scheme::RelayNonlinear;
  bool normalize_power = true;
  RappParams pa_rapp;
  RappParams activation_rapp;
  double pinv_ridge = 1e-12;
  RxInputMode rx_input = RxInputMode::FadingThenDiffraction;
  RxFading rx_fading = RxFading::PerDraw;
  PixelScaling pixel_scaling = PixelScaling::Unit;

  double carrier_hz = 2.2e9;
  double antenna_gap_wavelengths = 10.0;
  double layer_gap_wavelengths = 2.0;
  double element_spacing_wavelengths = 0.5;
  double element_area_wavelengths2 = 0.25;

  std::size_t pixels() const { return image_channels * image_height * image_width; }
  /// Columns of the packed signal, ceil(C*H*W / (2 N_t)). The flattened image
  /// is zero-padded to 2 N_t K values.
  std::size_t columns() const;
  /// Length of the real feature vector fed to the classifier head.
  std::size_t feature_count() const { return 2 * n_r * columns(); }

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

enum class ChannelPolicy { PerBatch, PerEpoch, Fixed };

std::string_view to_string(ChannelPolicy p);
ChannelPolicy parse_channel_policy(std::string_view name);

struct TrainConfig {
  std::size_t batch_size = 128;
  int epochs = 30;
  std::uint64_t seed = 1;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  ChannelPolicy channel_policy = ChannelPolicy::PerBatch;
  /// Channel draws averaged in the final evaluation.
  std::size_t eval_draws = 10;
  /// Channel draws for the per-epoch test accuracy of non-final epochs.
  std::size_t epoch_eval_draws = 1;
  /// Images per evaluation chunk (memory bound only; results do not depend on it).
  std::size_t eval_chunk = 500;
  /// 0 means the whole split.
  std::size_t train_limit = 0;
  std::size_t test_limit = 0;

  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

}  // namespace aisim
