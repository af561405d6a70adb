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
#include <vector>

#include "aisim/channel.hpp"
#include "aisim/complex_matrix.hpp"
#include "aisim/config.hpp"
#include "aisim/geometry.hpp"
#include "aisim/params.hpp"
#include "aisim/rng.hpp"

namespace aisim {

// Signals of a batch are stored side by side: image b occupies columns
// [b*K, (b+1)*K) of every intermediate matrix.

/// Row-major pixels -> N_t x K. The pixels, zero-padded to 2 N_t K values, are
/// split in half: the first half gives real parts and the second half imaginary
/// parts, filled column by column.
ComplexMatrix pack_image(std::span<const double> pixels, const ExperimentConfig& config);
std::vector<double> unpack_image(const ComplexMatrix& packed, const ExperimentConfig& config);

/// `pixels` holds `count` images back to back.
ComplexMatrix pack_batch(std::span<const double> pixels, std::size_t count,
                         const ExperimentConfig& config);

/// All randomness consumed by one forward pass. Noise matrices are already
/// scaled to the configured variance; they are empty when noiseless.
struct Realization {
  ChannelDraw channels;
  ComplexMatrix noise_relay;  // N_s x K*B
  ComplexMatrix noise_rx;     // N_r x K*B
};

/// Noise for a batch under fixed channels.
Realization draw_noise(const ExperimentConfig& config, std::size_t batch, ChannelDraw channels,
                       RngStream& noise_stream);
/// Fresh channels and noise.
Realization draw_realization(const ExperimentConfig& config, std::size_t batch,
                             RngStream& channel_stream, RngStream& noise_stream,
                             std::uint64_t draw_id = 0);

struct LayerCache {
  ComplexMatrix input;     // X_{l-1}
  ComplexMatrix incident;  // W_{2l-1} X_{l-1}
  ComplexMatrix phased;    // Theta_l W_{2l-1} X_{l-1}
  ComplexMatrix pre;       // W_{2l} Theta_l W_{2l-1} X_{l-1} + b_l 1^T
  ComplexMatrix output;    // activation(pre)
};

struct NormCache {
  ComplexMatrix input;
  std::vector<double> scales;  // one per image; 1 when normalization is off
};

/// Every intermediate of one batched forward pass.
struct ForwardCache {
  std::size_t batch = 0;
  Scheme scheme = Scheme::RelayNonlinear;
  Realization realization;
  ComplexMatrix s_c;
  std::vector<LayerCache> tx;
  ComplexMatrix s_t;  // after power normalization when enabled
  NormCache tx_norm;
  ComplexMatrix y_t;
  ComplexMatrix s_hat;  // LS estimate (or y_t under RelayNoCP)
  ComplexMatrix relay_pre;
  NormCache relay_norm;
  ComplexMatrix s_s;
  ComplexMatrix x0_r;
  std::vector<LayerCache> rx;
  ComplexMatrix s_r;
  RealMatrix features;  // feature_count x B
  RealMatrix logits;    // classes x B
};

ActivationMode activation_mode(const ExperimentConfig& config);
ActivationMode amplifier_mode(const ExperimentConfig& config);

/// Per-image unit mean power: each K-column block is divided by
/// sqrt(mean |x|^2) over that block. All-zero blocks keep scale 1.
ComplexMatrix normalize_power(const ComplexMatrix& x, std::size_t block_cols,
                              std::vector<double>& scales);

/// Transmitter-side stack, S_c (N_t x KB) -> X_L^t (M x KB).
ComplexMatrix tx_sim_forward(const ComplexMatrix& s_c, const ModelParams& params,
                             const FixedPropagation& fixed, const ExperimentConfig& config,
                             ForwardCache& cache);

/// Fading link into the relay, LS estimate, amplification and PA. Returns S_s.
ComplexMatrix relay_forward(const ComplexMatrix& s_t, const ModelParams& params,
                            const ExperimentConfig& config, const Realization& realization,
                            ForwardCache& cache);

/// Receiver-side stack from the relay output (or, without a relay, from the
/// transmitter output) to the antennas, receiver noise included.
ComplexMatrix rx_sim_forward(const ComplexMatrix& s_s, const ModelParams& params,
                             const FixedPropagation& fixed, const ExperimentConfig& config,
                             const Realization& realization, ForwardCache& cache);

/// Flattens [vec(Re S_r); vec(Im S_r)] per image and applies the linear head.
RealMatrix classify_head(const ComplexMatrix& s_r, std::size_t batch, const ModelParams& params,
                         ForwardCache& cache);

/// Full pass for a packed batch under a given realization. Returns logits,
/// classes x batch.
RealMatrix forward_batch(const ComplexMatrix& s_c, std::size_t batch, const ModelParams& params,
                         const FixedPropagation& fixed, const ExperimentConfig& config,
                         Realization realization, ForwardCache& cache);

/// Single image with fresh channel and noise draws.
std::vector<double> forward(std::span<const double> image, const ModelParams& params,
                            const FixedPropagation& fixed, const ExperimentConfig& config,
                            RngStream& channel_stream, RngStream& noise_stream,
                            ForwardCache& cache);

}  // namespace aisim
