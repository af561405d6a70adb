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

#include "aisim/geometry.hpp"

#include <cmath>
#include <numbers>

#include "aisim/errors.hpp"

namespace aisim {

StackGeometry StackGeometry::from_config(const ExperimentConfig& config) {
  StackGeometry g;
  g.carrier_hz = config.carrier_hz;
  g.wavelength = kSpeedOfLight / config.carrier_hz;
  g.antenna_to_first_layer = config.antenna_gap_wavelengths * g.wavelength;
  g.inter_layer = config.layer_gap_wavelengths * g.wavelength;
  g.element_spacing = config.element_spacing_wavelengths * g.wavelength;
  g.element_area = config.element_area_wavelengths2 * g.wavelength * g.wavelength;
  g.layers = config.layers;
  return g;
}

ArrayLayout make_ula(std::size_t n, double spacing, double z) {
  ArrayLayout a;
  a.kind = ArrayKind::Ula;
  a.positions.reserve(n);
  const double center = (static_cast<double>(n) - 1.0) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    a.positions.push_back({(static_cast<double>(i) - center) * spacing, 0.0, z});
  }
  return a;
}

ArrayLayout make_upa(std::size_t m, double spacing, double z) {
  ArrayLayout a;
  a.kind = ArrayKind::Upa;
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
  const std::size_t rows = cols == 0 ? 0 : (m + cols - 1) / cols;
  const double cx = (static_cast<double>(cols) - 1.0) / 2.0;
  const double cy = (static_cast<double>(rows) - 1.0) / 2.0;
  a.positions.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = static_cast<double>(i % cols);
    const auto r = static_cast<double>(i / cols);
    a.positions.push_back({(c - cx) * spacing, (r - cy) * spacing, z});
  }
  return a;
}

StackLayouts build_layouts(const ExperimentConfig& config, const StackGeometry& geom) {
  StackLayouts out;
  const std::size_t surfaces = 2 * config.layers;
  auto stack = [&](std::vector<ArrayLayout>& side, std::size_t first_antennas) {
    side.push_back(make_ula(first_antennas, geom.element_spacing, 0.0));
    for (std::size_t s = 0; s < surfaces; ++s) {
      const double z = geom.antenna_to_first_layer + static_cast<double>(s) * geom.inter_layer;
      side.push_back(make_upa(config.meta_atoms, geom.element_spacing, z));
    }
  };
  stack(out.tx, config.n_t);
  stack(out.rx, config.n_s);
  const double last = out.rx.back().positions.front().z;
  out.rx.push_back(make_ula(config.n_r, geom.element_spacing, last + geom.antenna_to_first_layer));
  return out;
}

namespace {

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

RealMatrix distance_matrix(const ArrayLayout& src, const ArrayLayout& dst) {
  RealMatrix d(dst.positions.size(), src.positions.size());
  for (std::size_t m = 0; m < dst.positions.size(); ++m)
    for (std::size_t n = 0; n < src.positions.size(); ++n)
      d(m, n) = distance(dst.positions[m], src.positions[n]);
  return d;
}

ComplexMatrix diffraction_matrix(const ArrayLayout& src, const ArrayLayout& dst,
                                 const StackGeometry& geom) {
  const double lambda = geom.wavelength;
  const double two_pi = 2.0 * std::numbers::pi;
  const Vec3& nrm = src.normal;
  ComplexMatrix w(dst.positions.size(), src.positions.size());
  for (std::size_t m = 0; m < dst.positions.size(); ++m) {
    for (std::size_t n = 0; n < src.positions.size(); ++n) {
      const Vec3& p = dst.positions[m];
      const Vec3& q = src.positions[n];
      const double d = distance(p, q);
      if (!(d > 0.0)) {
        throw GeometryError("diffraction_matrix: source element " + std::to_string(n) +
                            " coincides with destination element " + std::to_string(m));
      }
      const double cos_phi =
          std::abs((p.x - q.x) * nrm.x + (p.y - q.y) * nrm.y + (p.z - q.z) * nrm.z) / d;
      const cplx radial{1.0 / (two_pi * d), -1.0 / lambda};
      w(m, n) = (geom.element_area * cos_phi / d) * radial * std::polar(1.0, two_pi * d / lambda);
    }
  }
  return w;
}

FixedPropagation build_propagation(const ExperimentConfig& config) {
  config.validate();
  const StackGeometry geom = StackGeometry::from_config(config);
  const StackLayouts layouts = build_layouts(config, geom);
  FixedPropagation fixed;
  for (std::size_t i = 0; i + 1 < layouts.tx.size(); ++i) {
    fixed.tx.push_back(diffraction_matrix(layouts.tx[i], layouts.tx[i + 1], geom));
  }
  for (std::size_t i = 0; i + 1 < layouts.rx.size(); ++i) {
    fixed.rx.push_back(diffraction_matrix(layouts.rx[i], layouts.rx[i + 1], geom));
  }
  if (config.rx_input == RxInputMode::FadingDirect) {
    fixed.rx.front() = ComplexMatrix::identity(config.meta_atoms);
  }
  const ArrayLayout a = make_upa(config.meta_atoms, geom.element_spacing, 0.0);
  const ArrayLayout b = make_upa(config.meta_atoms, geom.element_spacing, geom.inter_layer);
  fixed.bridge = diffraction_matrix(a, b, geom);
  return fixed;
}

}  // namespace aisim
