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

#include "aisim/complex_matrix.hpp"
#include "aisim/config.hpp"
#include "aisim/rng.hpp"

namespace aisim {

/// SNR in dB and the matching linear noise variance, SNR = 10 log10(1/sigma2).
struct NoiseSpec {
  double snr_db = 0.0;
  double sigma2 = 1.0;

  static NoiseSpec from_snr_db(double snr_db);
  /// Zero noise variance, used by the schemes without wireless links.
  static NoiseSpec noiseless();
};

double snr_to_sigma2(double snr_db);
double sigma2_to_snr(double sigma2);

/// One joint realization of the two relay fading channels.
struct ChannelDraw {
  ComplexMatrix g_t;       // N_s x M
  ComplexMatrix g_r;       // N_s x N_s, or M x N_s under RxInputMode::FadingDirect
  ComplexMatrix g_t_pinv;  // M x N_s; empty when the scheme skips the LS step
  std::uint64_t draw_id = 0;
};

inline constexpr int kMaxChannelAttempts = 16;

/// Draws i.i.d. CN(0,1) channels. When the scheme needs the LS estimate and the
/// pseudoinverse of g_t fails, the draw is repeated (at most 16 attempts).
ChannelDraw draw_channels(const ExperimentConfig& config, RngStream& channel_stream,
                          std::uint64_t draw_id = 0);

/// x + N with N i.i.d. CN(0, sigma2). sigma2 == 0 returns x unchanged and
/// consumes no randomness.
ComplexMatrix add_awgn(const ComplexMatrix& x, double sigma2, RngStream& noise_stream);

}  // namespace aisim
