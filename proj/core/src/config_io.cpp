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

#include "aisim/config_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "aisim/errors.hpp"
#include "aisim/rng.hpp"

namespace aisim {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError("config: " + key + " = '" + v + "' is not a number");
  }
  return d;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config: " + key + " = '" + v + "' is not a nonnegative integer");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config: " + key + " = '" + v + "' is not a boolean");
}

struct KeyBinding {
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

KeyBinding size_key(std::string key, std::size_t ExperimentConfig::*field) {
  return {key, [field](const RunConfig& r) { return std::to_string(r.experiment.*field); },
          [key, field](RunConfig& r, const std::string& v) {
            r.experiment.*field = static_cast<std::size_t>(to_uint(key, v));
          }};
}

KeyBinding double_key(std::string key, double ExperimentConfig::*field) {
  return {key, [field](const RunConfig& r) { return fmt_double(r.experiment.*field); },
          [key, field](RunConfig& r, const std::string& v) {
            r.experiment.*field = to_double(key, v);
          }};
}

KeyBinding rapp_key(std::string key, RappParams ExperimentConfig::*group, double RappParams::*f) {
  return {key, [group, f](const RunConfig& r) { return fmt_double(r.experiment.*group.*f); },
          [key, group, f](RunConfig& r, const std::string& v) {
            r.experiment.*group.*f = to_double(key, v);
          }};
}

KeyBinding train_size_key(std::string key, std::size_t TrainConfig::*field) {
  return {key, [field](const RunConfig& r) { return std::to_string(r.train.*field); },
          [key, field](RunConfig& r, const std::string& v) {
            r.train.*field = static_cast<std::size_t>(to_uint(key, v));
          }};
}

KeyBinding train_double_key(std::string key, double TrainConfig::*field) {
  return {key, [field](const RunConfig& r) { return fmt_double(r.train.*field); },
          [key, field](RunConfig& r, const std::string& v) { r.train.*field = to_double(key, v); }};
}

const std::vector<KeyBinding>& bindings() {
  static const std::vector<KeyBinding> table = [] {
    using E = ExperimentConfig;
    std::vector<KeyBinding> t = {
        {"channel.rx_fading",
         [](const RunConfig& r) { return std::string(to_string(r.experiment.rx_fading)); },
         [](RunConfig& r, const std::string& v) { r.experiment.rx_fading = parse_rx_fading(v); }},
        double_key("channel.snr_db", &E::snr_db),
        double_key("geometry.antenna_gap_wavelengths", &E::antenna_gap_wavelengths),
        double_key("geometry.carrier_hz", &E::carrier_hz),
        double_key("geometry.element_area_wavelengths2", &E::element_area_wavelengths2),
        double_key("geometry.element_spacing_wavelengths", &E::element_spacing_wavelengths),
        double_key("geometry.layer_gap_wavelengths", &E::layer_gap_wavelengths),
        size_key("image.channels", &E::image_channels),
        size_key("image.classes", &E::num_classes),
        size_key("image.height", &E::image_height),
        {"image.pixel_scaling",
         [](const RunConfig& r) { return std::string(to_string(r.experiment.pixel_scaling)); },
         [](RunConfig& r, const std::string& v) {
           r.experiment.pixel_scaling = parse_pixel_scaling(v);
         }},
        size_key("image.width", &E::image_width),
        size_key("model.layers", &E::layers),
        size_key("model.meta_atoms", &E::meta_atoms),
        size_key("model.n_r", &E::n_r),
        size_key("model.n_s", &E::n_s),
        size_key("model.n_t", &E::n_t),
        {"model.normalize_power",
         [](const RunConfig& r) {
           return std::string(r.experiment.normalize_power ? "true" : "false");
         },
         [](RunConfig& r, const std::string& v) {
           r.experiment.normalize_power = to_bool("model.normalize_power", v);
         }},
        double_key("model.pinv_ridge", &E::pinv_ridge),
        {"model.rx_input",
         [](const RunConfig& r) { return std::string(to_string(r.experiment.rx_input)); },
         [](RunConfig& r, const std::string& v) {
           r.experiment.rx_input = parse_rx_input_mode(v);
         }},
        {"model.scheme",
         [](const RunConfig& r) { return std::string(to_string(r.experiment.scheme)); },
         [](RunConfig& r, const std::string& v) { r.experiment.scheme = parse_scheme(v); }},
        rapp_key("rapp.activation_p", &E::activation_rapp, &RappParams::p),
        rapp_key("rapp.activation_x_sat", &E::activation_rapp, &RappParams::x_sat),
        rapp_key("rapp.pa_p", &E::pa_rapp, &RappParams::p),
        rapp_key("rapp.pa_x_sat", &E::pa_rapp, &RappParams::x_sat),
        train_size_key("train.batch_size", &TrainConfig::batch_size),
        train_double_key("train.beta1", &TrainConfig::beta1),
        train_double_key("train.beta2", &TrainConfig::beta2),
        {"train.channel_policy",
         [](const RunConfig& r) { return std::string(to_string(r.train.channel_policy)); },
         [](RunConfig& r, const std::string& v) {
           r.train.channel_policy = parse_channel_policy(v);
         }},
        {"train.epochs", [](const RunConfig& r) { return std::to_string(r.train.epochs); },
         [](RunConfig& r, const std::string& v) {
           r.train.epochs = static_cast<int>(to_uint("train.epochs", v));
         }},
        train_size_key("train.epoch_eval_draws", &TrainConfig::epoch_eval_draws),
        train_double_key("train.epsilon", &TrainConfig::epsilon),
        train_size_key("train.eval_chunk", &TrainConfig::eval_chunk),
        train_size_key("train.eval_draws", &TrainConfig::eval_draws),
        train_double_key("train.learning_rate", &TrainConfig::learning_rate),
        {"train.seed", [](const RunConfig& r) { return std::to_string(r.train.seed); },
         [](RunConfig& r, const std::string& v) { r.train.seed = to_uint("train.seed", v); }},
        train_size_key("train.test_limit", &TrainConfig::test_limit),
        train_size_key("train.train_limit", &TrainConfig::train_limit),
    };
    return t;
  }();
  return table;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key " + key);
    }
  }
  return kv;
}

void apply_key_values(const KeyValues& kv, RunConfig& run) {
  std::string unknown;
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const auto& b : bindings()) known = known || b.key == key;
    if (!known) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);
  for (const auto& b : bindings()) {
    if (const auto it = kv.find(b.key); it != kv.end()) b.set(run, it->second);
  }
  run.experiment.validate();
  run.train.validate();
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& b : bindings()) keys.push_back(b.key);
  return keys;
}

std::string format_config(const RunConfig& run) {
  std::string out;
  for (const auto& b : bindings()) out += b.key + " = " + b.get(run) + "\n";
  return out;
}

RunConfig parse_config(std::string_view text) {
  RunConfig run;
  apply_key_values(parse_key_values(text), run);
  return run;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::uint64_t config_hash(const RunConfig& run) { return fnv1a64(format_config(run)); }

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<std::string> differing_keys(const RunConfig& a, const RunConfig& b) {
  std::vector<std::string> out;
  for (const auto& k : bindings())
    if (k.get(a) != k.get(b)) out.push_back(k.key);
  return out;
}

}  // namespace aisim
