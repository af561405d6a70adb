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

#include "aisim/params.hpp"

#include <cmath>
#include <numbers>

namespace aisim {
namespace {

std::size_t relay_input_width(const ExperimentConfig& config) {
  return config.scheme == Scheme::RelayNoCP ? config.n_s : config.meta_atoms;
}

template <typename Field, typename Self>
std::vector<Field> collect_fields(Self& p) {
  std::vector<Field> out;
  out.push_back({"theta_t", FieldKind::Angle, p.theta_t.rows(), p.theta_t.cols(),
                 p.theta_t.values()});
  out.push_back({"theta_r", FieldKind::Angle, p.theta_r.rows(), p.theta_r.cols(),
                 p.theta_r.values()});
  out.push_back({"b_t", FieldKind::Complex, p.b_t.rows(), p.b_t.cols(), p.b_t.reals()});
  out.push_back({"b_r", FieldKind::Complex, p.b_r.rows(), p.b_r.cols(), p.b_r.reals()});
  out.push_back({"z", FieldKind::Complex, p.z.rows(), p.z.cols(), p.z.reals()});
  out.push_back({"b_s", FieldKind::Complex, p.b_s.rows(), p.b_s.cols(), p.b_s.reals()});
  out.push_back({"fc_weight", FieldKind::Real, p.fc_weight.rows(), p.fc_weight.cols(),
                 p.fc_weight.values()});
  out.push_back({"fc_bias", FieldKind::Real, p.fc_bias.rows(), p.fc_bias.cols(),
                 p.fc_bias.values()});
  return out;
}

}  // namespace

ModelParams ModelParams::zeros(const ExperimentConfig& config) {
  config.validate();
  ModelParams p;
  const std::size_t L = config.layers;
  const std::size_t M = config.meta_atoms;
  p.theta_t = RealMatrix(L, M);
  p.theta_r = RealMatrix(L, M);
  p.b_t = ComplexMatrix(M, L);
  p.b_r = ComplexMatrix(M, L);
  if (uses_relay(config.scheme)) {
    p.z = ComplexMatrix(config.n_s, relay_input_width(config));
    p.b_s = ComplexMatrix(config.n_s, 1);
  }
  p.fc_weight = RealMatrix(config.num_classes, config.feature_count());
  p.fc_bias = RealMatrix(config.num_classes, 1);
  return p;
}

ModelParams ModelParams::initialize(const ExperimentConfig& config, RngStream& init) {
  ModelParams p = zeros(config);
  const double two_pi = 2.0 * std::numbers::pi;
  for (auto& t : p.theta_t.values()) t = two_pi * init.uniform();
  for (auto& t : p.theta_r.values()) t = two_pi * init.uniform();
  if (!p.z.empty()) {
    p.z = sample_complex_gaussian(p.z.rows(), p.z.cols(), 1.0 / static_cast<double>(p.z.cols()),
                                  init);
  }
  const double limit =
      std::sqrt(6.0 / static_cast<double>(p.fc_weight.cols() + p.fc_weight.rows()));
  for (auto& w : p.fc_weight.values()) w = limit * (2.0 * init.uniform() - 1.0);
  return p;
}

std::vector<ParamField> ModelParams::fields() { return collect_fields<ParamField>(*this); }

std::vector<ConstParamField> ModelParams::fields() const {
  return collect_fields<ConstParamField>(*this);
}

std::size_t ModelParams::scalar_count() const {
  std::size_t n = 0;
  for (const auto& f : fields()) n += f.values.size();
  return n;
}

bool ModelParams::same_shape(const ModelParams& other) const {
  const auto a = fields();
  const auto b = other.fields();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows != b[i].rows || a[i].cols != b[i].cols) return false;
  }
  return true;
}

std::size_t parameter_count(const ExperimentConfig& config) {
  const std::size_t LM = config.layers * config.meta_atoms;
  std::size_t n = 2 * LM + 2 * 2 * LM;
  if (uses_relay(config.scheme)) n += 2 * config.n_s * relay_input_width(config) + 2 * config.n_s;
  n += config.num_classes * config.feature_count() + config.num_classes;
  return n;
}

std::vector<cplx> phase_factors(const RealMatrix& theta, std::size_t layer) {
  std::vector<cplx> out(theta.cols());
  for (std::size_t m = 0; m < theta.cols(); ++m) out[m] = std::polar(1.0, theta(layer, m));
  return out;
}

double wrap_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace aisim
