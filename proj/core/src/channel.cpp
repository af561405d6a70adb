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

#include "aisim/channel.hpp"

#include <cmath>
#include <string>

#include "aisim/errors.hpp"

namespace aisim {

double snr_to_sigma2(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }
double sigma2_to_snr(double sigma2) { return -10.0 * std::log10(sigma2); }

NoiseSpec NoiseSpec::from_snr_db(double snr_db) { return {snr_db, snr_to_sigma2(snr_db)}; }
NoiseSpec NoiseSpec::noiseless() { return {HUGE_VAL, 0.0}; }

ChannelDraw draw_channels(const ExperimentConfig& config, RngStream& channel_stream,
                          std::uint64_t draw_id) {
  const std::size_t rx_rows =
      config.rx_input == RxInputMode::FadingDirect ? config.meta_atoms : config.n_s;
  for (int attempt = 0; attempt < kMaxChannelAttempts; ++attempt) {
    ChannelDraw draw;
    draw.draw_id = draw_id;
    draw.g_t = sample_complex_gaussian(config.n_s, config.meta_atoms, 1.0, channel_stream);
    draw.g_r = sample_complex_gaussian(rx_rows, config.n_s, 1.0, channel_stream);
    if (config.rx_fading == RxFading::Static) {
      // Still consumed above, so the g_t sequence matches the per-draw mode.
      RngStream fixed(splitmix64(fnv1a64("static-rx-fading")));
      draw.g_r = sample_complex_gaussian(rx_rows, config.n_s, 1.0, fixed);
    }
    if (!uses_pseudoinverse(config.scheme)) return draw;
    try {
      draw.g_t_pinv = pseudoinverse(draw.g_t, config.pinv_ridge);
      return draw;
    } catch (const NumericError&) {
      // redraw
    }
  }
  throw NumericError("draw_channels: " + std::to_string(kMaxChannelAttempts) +
                         " consecutive singular channel draws",
                     HUGE_VAL);
}

ComplexMatrix add_awgn(const ComplexMatrix& x, double sigma2, RngStream& noise_stream) {
  if (sigma2 < 0.0) throw ConfigError("add_awgn: negative noise variance");
  if (sigma2 == 0.0) return x;
  return x + sample_complex_gaussian(x.rows(), x.cols(), sigma2, noise_stream);
}

}  // namespace aisim
