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
#include <vector>

#include "aisim/complex_matrix.hpp"
#include "aisim/config.hpp"

namespace aisim {

inline constexpr double kSpeedOfLight = 299'792'458.0;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum class ArrayKind { Upa, Ula };

/// Element positions of one antenna array or metasurface layer.
struct ArrayLayout {
  std::vector<Vec3> positions;
  Vec3 normal{0.0, 0.0, 1.0};
  ArrayKind kind = ArrayKind::Upa;
};

/// Physical dimensions of the stacked metasurfaces, all in meters.
struct StackGeometry {
  double carrier_hz = 2.2e9;
  double wavelength = kSpeedOfLight / 2.2e9;
  double antenna_to_first_layer = 10.0 * wavelength;
  double inter_layer = 2.0 * wavelength;
  double element_spacing = 0.5 * wavelength;
  double element_area = 0.25 * wavelength * wavelength;
  std::size_t layers = 1;

  static StackGeometry from_config(const ExperimentConfig& config);
};

/// n elements along x, centered on the z axis at height z.
ArrayLayout make_ula(std::size_t n, double spacing, double z);
/// m elements on a ceil(sqrt(m))-column grid in the plane at height z,
/// centered on the z axis, filled row by row.
ArrayLayout make_upa(std::size_t m, double spacing, double z);

struct StackLayouts {
  /// ULA(N_t), then 2L layers: passive 1, activation 1, passive 2, ...
  std::vector<ArrayLayout> tx;
  /// ULA(N_s) relay aperture, 2L layers, ULA(N_r).
  std::vector<ArrayLayout> rx;
};

StackLayouts build_layouts(const ExperimentConfig& config, const StackGeometry& geom);

/// |dst| x |src| matrix of element distances.
RealMatrix distance_matrix(const ArrayLayout& src, const ArrayLayout& dst);

/// Rayleigh-Sommerfeld transmission coefficients between two parallel arrays:
///   W[m][n] = A cos(phi) / d * (1/(2 pi d) - j/lambda) * exp(j 2 pi d / lambda)
/// with cos(phi) taken against the source layer normal. Throws GeometryError
/// when two elements coincide.
ComplexMatrix diffraction_matrix(const ArrayLayout& src, const ArrayLayout& dst,
                                 const StackGeometry& geom);

/// Deterministic diffraction matrices of both stacks.
///
/// tx[i] is W_{i+1}^t (i = 0 .. 2L-1); rx[i] is W_{i+1}^r (i = 0 .. 2L).
/// rx[0] is M x N_s (or the M x M identity under RxInputMode::FadingDirect).
/// bridge is the M x M matrix at one layer gap that replaces rx[0] when the
/// two stacks are joined without a relay.
struct FixedPropagation {
  std::vector<ComplexMatrix> tx;
  std::vector<ComplexMatrix> rx;
  ComplexMatrix bridge;
};

FixedPropagation build_propagation(const ExperimentConfig& config);

}  // namespace aisim
