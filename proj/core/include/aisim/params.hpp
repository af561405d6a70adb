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
#include <span>
#include <string>
#include <vector>

#include "aisim/complex_matrix.hpp"
#include "aisim/config.hpp"
#include "aisim/rng.hpp"

namespace aisim {

enum class FieldKind { Angle, Real, Complex };

/// A named view of one parameter array. Complex arrays are exposed as
/// interleaved (re, im) doubles, so values.size() == 2 * rows * cols for them.
template <typename T>
struct BasicParamField {
  std::string name;
  FieldKind kind;
  std::size_t rows;
  std::size_t cols;
  std::span<T> values;
};

using ParamField = BasicParamField<double>;
using ConstParamField = BasicParamField<const double>;

/// All trainable quantities.
///
/// Only phase angles are stored; the unit-modulus diagonal e^{j theta} is
/// materialized on use. Parameters a scheme does not use are empty: z and b_s
/// under the no-relay schemes. Under RelayNoCP z is N_s x N_s.
struct ModelParams {
  RealMatrix theta_t;  // L x M, radians
  RealMatrix theta_r;  // L x M
  ComplexMatrix b_t;   // M x L, column l is the layer-l bias
  ComplexMatrix b_r;   // M x L
  ComplexMatrix z;     // N_s x M relay amplification
  ComplexMatrix b_s;   // N_s x 1 relay bias
  RealMatrix fc_weight;  // classes x features
  RealMatrix fc_bias;    // classes x 1

  /// Correctly shaped, all zeros.
  static ModelParams zeros(const ExperimentConfig& config);
  /// theta ~ U[0, 2 pi), biases 0, z ~ CN(0, 1/fan_in), fc_weight ~ U(+-sqrt(6/(in+out))), fc_bias 0.
  static ModelParams initialize(const ExperimentConfig& config, RngStream& init);

  std::vector<ParamField> fields();
  std::vector<ConstParamField> fields() const;

  /// Number of real scalars.
  std::size_t scalar_count() const;
  bool same_shape(const ModelParams& other) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Gradients mirror the parameter layout exactly; complex entries carry
/// dL/dRe + j dL/dIm.
using GradientSet = ModelParams;

/// Real scalar count implied by a configuration.
std::size_t parameter_count(const ExperimentConfig& config);

/// Diagonal of the layer-l phase matrix, e^{j theta[l, :]}.
std::vector<cplx> phase_factors(const RealMatrix& theta, std::size_t layer);

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double theta);

}  // namespace aisim
