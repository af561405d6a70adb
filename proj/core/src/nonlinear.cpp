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

#include "aisim/nonlinear.hpp"

#include <cmath>

#include "aisim/errors.hpp"

namespace aisim {

void RappParams::validate() const {
  if (!(p > 0.0 && std::isfinite(p))) throw ConfigError("rapp: p must be positive");
  if (!(x_sat > 0.0 && std::isfinite(x_sat))) throw ConfigError("rapp: x_sat must be positive");
}

namespace {

// (|x|/x_sat)^(2p) and (1 + u)^(-1/(2p)), with a pow-free path for p = 2.
struct RappGain {
  double u;
  double gain;
};

inline RappGain rapp_gain(double r2, const RappParams& params) {
  if (params.p == 2.0) {
    const double q = r2 / (params.x_sat * params.x_sat);
    const double u = q * q;
    return {u, 1.0 / std::sqrt(std::sqrt(1.0 + u))};
  }
  const double two_p = 2.0 * params.p;
  const double u = std::pow(std::sqrt(r2) / params.x_sat, two_p);
  return {u, std::pow(1.0 + u, -1.0 / two_p)};
}

}  // namespace

cplx rapp(cplx x, const RappParams& params) {
  const double r2 = std::norm(x);
  if (r2 == 0.0) return x;
  return x * rapp_gain(r2, params).gain;
}

RappJacobian rapp_derivatives(cplx x, const RappParams& params) {
  const double r2 = std::norm(x);
  if (r2 == 0.0) return {cplx{1.0, 0.0}, cplx{0.0, 1.0}};
  const auto [u, gain] = rapp_gain(r2, params);
  // out = x * gain(r); d gain/dr = -gain/(1+u) * u / r. Then
  // d out/d Re x = gain + x * gain'(r) * Re(x)/r, likewise for Im with j.
  const double k = -gain / (1.0 + u) * u / r2;
  return {cplx{gain, 0.0} + x * (k * x.real()), cplx{0.0, gain} + x * (k * x.imag())};
}

ComplexMatrix activation_apply(const ComplexMatrix& x, ActivationMode mode,
                               const RappParams& params) {
  if (mode == ActivationMode::Identity) return x;
  ComplexMatrix out = x;
  for (auto& v : out.entries()) v = rapp(v, params);
  return out;
}

}  // namespace aisim
