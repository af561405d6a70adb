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

#include "aisim/config.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "aisim/errors.hpp"

namespace aisim {
namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 5> kSchemes{{
    {Scheme::RelayNonlinear, "relay-nonlinear"},
    {Scheme::RelayLinear, "relay-linear"},
    {Scheme::RelayNoCP, "relay-nocp"},
    {Scheme::NoOtaNonlinear, "noota-nonlinear"},
    {Scheme::NoOtaLinear, "noota-linear"},
}};

template <typename Enum, std::size_t N>
Enum parse_enum(const std::array<std::pair<Enum, std::string_view>, N>& table,
                std::string_view name, std::string_view what) {
  for (const auto& [value, text] : table)
    if (text == name) return value;
  std::string valid;
  for (const auto& [value, text] : table) valid += (valid.empty() ? "" : ", ") + std::string(text);
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(name) +
                    "' (expected one of: " + valid + ")");
}

template <typename Enum, std::size_t N>
std::string_view enum_name(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           Enum v) {
  for (const auto& [value, text] : table)
    if (value == v) return text;
  return "?";
}

constexpr std::array<std::pair<RxInputMode, std::string_view>, 2> kRxModes{{
    {RxInputMode::FadingThenDiffraction, "fading-then-diffraction"},
    {RxInputMode::FadingDirect, "fading-direct"},
}};

constexpr std::array<std::pair<RxFading, std::string_view>, 2> kRxFadings{{
    {RxFading::PerDraw, "per-draw"},
    {RxFading::Static, "static"},
}};

constexpr std::array<std::pair<PixelScaling, std::string_view>, 2> kScalings{{
    {PixelScaling::Unit, "unit"},
    {PixelScaling::Standardize, "standardize"},
}};

constexpr std::array<std::pair<ChannelPolicy, std::string_view>, 3> kPolicies{{
    {ChannelPolicy::PerBatch, "per-batch"},
    {ChannelPolicy::PerEpoch, "per-epoch"},
    {ChannelPolicy::Fixed, "fixed"},
}};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

std::string_view to_string(Scheme s) { return enum_name(kSchemes, s); }
Scheme parse_scheme(std::string_view name) { return parse_enum(kSchemes, name, "scheme"); }

bool uses_relay(Scheme s) {
  return s == Scheme::RelayNonlinear || s == Scheme::RelayLinear || s == Scheme::RelayNoCP;
}
bool uses_pseudoinverse(Scheme s) {
  return s == Scheme::RelayNonlinear || s == Scheme::RelayLinear;
}
bool is_linear(Scheme s) { return s == Scheme::RelayLinear || s == Scheme::NoOtaLinear; }

std::string_view to_string(RxInputMode m) { return enum_name(kRxModes, m); }
RxInputMode parse_rx_input_mode(std::string_view name) {
  return parse_enum(kRxModes, name, "rx input mode");
}

std::string_view to_string(RxFading f) { return enum_name(kRxFadings, f); }
RxFading parse_rx_fading(std::string_view name) {
  return parse_enum(kRxFadings, name, "rx fading mode");
}

std::string_view to_string(PixelScaling p) { return enum_name(kScalings, p); }
PixelScaling parse_pixel_scaling(std::string_view name) {
  return parse_enum(kScalings, name, "pixel scaling");
}

std::string_view to_string(ChannelPolicy p) { return enum_name(kPolicies, p); }
ChannelPolicy parse_channel_policy(std::string_view name) {
  return parse_enum(kPolicies, name, "channel policy");
}

std::size_t ExperimentConfig::columns() const {
  const std::size_t denom = 2 * n_t;
  if (denom == 0) throw ConfigError("n_t must be positive");
  return (pixels() + denom - 1) / denom;
}

void ExperimentConfig::validate() const {
  require(n_t > 0 && n_s > 0 && n_r > 0, "antenna counts must be positive");
  require(meta_atoms > 0, "meta_atoms must be positive");
  require(layers > 0, "layers must be positive");
  require(pixels() > 0, "image dimensions must be positive");
  require(num_classes >= 2, "num_classes must be at least 2");
  (void)columns();
  require(std::isfinite(snr_db), "snr_db must be finite");
  pa_rapp.validate();
  activation_rapp.validate();
  require(pinv_ridge >= 0.0 && std::isfinite(pinv_ridge), "pinv_ridge must be nonnegative");
  require(carrier_hz > 0.0 && std::isfinite(carrier_hz), "carrier_hz must be positive");
  require(antenna_gap_wavelengths > 0.0, "antenna gap must be positive");
  require(layer_gap_wavelengths > 0.0, "layer gap must be positive");
  require(element_spacing_wavelengths > 0.0, "element spacing must be positive");
  require(element_area_wavelengths2 > 0.0, "element area must be positive");
}

void TrainConfig::validate() const {
  require(batch_size > 0, "batch_size must be positive");
  require(epochs >= 0, "epochs must be nonnegative");
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(beta1 >= 0.0 && beta1 < 1.0, "beta1 must be in [0, 1)");
  require(beta2 >= 0.0 && beta2 < 1.0, "beta2 must be in [0, 1)");
  require(epsilon > 0.0, "epsilon must be positive");
  require(eval_draws > 0 && epoch_eval_draws > 0, "evaluation draw counts must be positive");
  require(eval_chunk > 0, "eval_chunk must be positive");
}

}  // namespace aisim
