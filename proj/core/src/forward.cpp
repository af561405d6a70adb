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

#include "aisim/forward.hpp"

#include <cmath>
#include <string>

#include "aisim/errors.hpp"

namespace aisim {
namespace {

void require_shape(const ComplexMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ConfigError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                      std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()));
  }
}

void add_bias_columns(ComplexMatrix& x, const ComplexMatrix& bias, std::size_t bias_col) {
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const cplx b = bias(r, bias_col);
    if (b == cplx{}) continue;
    for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) += b;
  }
}

void scale_rows(ComplexMatrix& x, const std::vector<cplx>& factors) {
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) *= factors[r];
}

// One passive + activation layer pair: act(W_out diag(phase) W_in X + b 1^T).
ComplexMatrix layer_forward(const ComplexMatrix& x, const ComplexMatrix& w_in,
                            const ComplexMatrix& w_out, const RealMatrix& theta,
                            const ComplexMatrix& bias, std::size_t layer, ActivationMode mode,
                            const RappParams& rapp_params, LayerCache& lc) {
  lc.input = x;
  lc.incident = matmul(w_in, x);
  lc.phased = lc.incident;
  scale_rows(lc.phased, phase_factors(theta, layer));
  lc.pre = matmul(w_out, lc.phased);
  add_bias_columns(lc.pre, bias, layer);
  lc.output = activation_apply(lc.pre, mode, rapp_params);
  return lc.output;
}

}  // namespace

ComplexMatrix pack_image(std::span<const double> pixels, const ExperimentConfig& config) {
  const std::size_t k = config.columns();
  const std::size_t n = config.n_t;
  if (pixels.size() != config.pixels()) {
    throw ConfigError("pack_image: " + std::to_string(pixels.size()) + " pixels, expected " +
                      std::to_string(config.pixels()));
  }
  // Padded vector v of length 2nk: Re from v[0, nk), Im from v[nk, 2nk).
  const std::size_t half = n * k;
  auto v = [&](std::size_t i) { return i < pixels.size() ? pixels[i] : 0.0; };
  ComplexMatrix out(n, k);
  for (std::size_t i = 0; i < half; ++i) out(i % n, i / n) = {v(i), v(half + i)};
  return out;
}

std::vector<double> unpack_image(const ComplexMatrix& packed, const ExperimentConfig& config) {
  require_shape(packed, config.n_t, config.columns(), "unpack_image");
  const std::size_t n = packed.rows();
  const std::size_t half = packed.size();
  std::vector<double> padded(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    padded[i] = packed(i % n, i / n).real();
    padded[half + i] = packed(i % n, i / n).imag();
  }
  padded.resize(config.pixels());
  return padded;
}

ComplexMatrix pack_batch(std::span<const double> pixels, std::size_t count,
                         const ExperimentConfig& config) {
  const std::size_t p = config.pixels();
  const std::size_t k = config.columns();
  if (pixels.size() != count * p) throw ConfigError("pack_batch: pixel buffer size mismatch");
  ComplexMatrix out(config.n_t, k * count);
  for (std::size_t b = 0; b < count; ++b) {
    out.set_columns(b * k, pack_image(pixels.subspan(b * p, p), config));
  }
  return out;
}

Realization draw_noise(const ExperimentConfig& config, std::size_t batch, ChannelDraw channels,
                       RngStream& noise_stream) {
  Realization r;
  r.channels = std::move(channels);
  if (!uses_relay(config.scheme)) return r;
  const double sigma2 = snr_to_sigma2(config.snr_db);
  if (sigma2 == 0.0) return r;
  const std::size_t k = config.columns();
  r.noise_relay = ComplexMatrix(config.n_s, k * batch);
  r.noise_rx = ComplexMatrix(config.n_r, k * batch);
  // Image by image, so the noise of an image does not depend on how the
  // data set is cut into batches.
  for (std::size_t b = 0; b < batch; ++b) {
    r.noise_relay.set_columns(b * k, sample_complex_gaussian(config.n_s, k, sigma2, noise_stream));
    r.noise_rx.set_columns(b * k, sample_complex_gaussian(config.n_r, k, sigma2, noise_stream));
  }
  return r;
}

Realization draw_realization(const ExperimentConfig& config, std::size_t batch,
                             RngStream& channel_stream, RngStream& noise_stream,
                             std::uint64_t draw_id) {
  ChannelDraw channels;
  if (uses_relay(config.scheme)) channels = draw_channels(config, channel_stream, draw_id);
  return draw_noise(config, batch, std::move(channels), noise_stream);
}

ActivationMode activation_mode(const ExperimentConfig& config) {
  return is_linear(config.scheme) ? ActivationMode::Identity : ActivationMode::RappAmplitude;
}

ActivationMode amplifier_mode(const ExperimentConfig& config) {
  return is_linear(config.scheme) ? ActivationMode::Identity : ActivationMode::RappAmplitude;
}

ComplexMatrix normalize_power(const ComplexMatrix& x, std::size_t block_cols,
                              std::vector<double>& scales) {
  if (block_cols == 0 || x.cols() % block_cols != 0) {
    throw ConfigError("normalize_power: block width does not divide the column count");
  }
  const std::size_t blocks = x.cols() / block_cols;
  scales.assign(blocks, 1.0);
  ComplexMatrix y = x;
  const double n = static_cast<double>(x.rows() * block_cols);
  for (std::size_t b = 0; b < blocks; ++b) {
    double power = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = b * block_cols; c < (b + 1) * block_cols; ++c) power += std::norm(x(r, c));
    if (power == 0.0) continue;
    const double s = std::sqrt(power / n);
    scales[b] = s;
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = b * block_cols; c < (b + 1) * block_cols; ++c) y(r, c) /= s;
  }
  return y;
}

ComplexMatrix tx_sim_forward(const ComplexMatrix& s_c, const ModelParams& params,
                             const FixedPropagation& fixed, const ExperimentConfig& config,
                             ForwardCache& cache) {
  require_shape(s_c, config.n_t, s_c.cols(), "tx_sim_forward input");
  const ActivationMode mode = activation_mode(config);
  cache.tx.assign(config.layers, {});
  ComplexMatrix x = s_c;
  for (std::size_t l = 0; l < config.layers; ++l) {
    x = layer_forward(x, fixed.tx[2 * l], fixed.tx[2 * l + 1], params.theta_t, params.b_t, l, mode,
                      config.activation_rapp, cache.tx[l]);
  }
  return x;
}

ComplexMatrix relay_forward(const ComplexMatrix& s_t, const ModelParams& params,
                            const ExperimentConfig& config, const Realization& realization,
                            ForwardCache& cache) {
  const ChannelDraw& ch = realization.channels;
  cache.y_t = matmul(ch.g_t, s_t);
  if (!realization.noise_relay.empty()) cache.y_t += realization.noise_relay;
  if (config.scheme == Scheme::RelayNoCP) {
    cache.s_hat = cache.y_t;
  } else {
    cache.s_hat = matmul(ch.g_t_pinv, cache.y_t);
  }
  cache.relay_pre = matmul(params.z, cache.s_hat);
  add_bias_columns(cache.relay_pre, params.b_s, 0);
  ComplexMatrix out = activation_apply(cache.relay_pre, amplifier_mode(config), config.pa_rapp);
  if (config.normalize_power) {
    cache.relay_norm.input = out;
    out = normalize_power(out, config.columns(), cache.relay_norm.scales);
  } else {
    cache.relay_norm = {};
  }
  return out;
}

ComplexMatrix rx_sim_forward(const ComplexMatrix& s_s, const ModelParams& params,
                             const FixedPropagation& fixed, const ExperimentConfig& config,
                             const Realization& realization, ForwardCache& cache) {
  const bool relay = uses_relay(config.scheme);
  cache.x0_r = relay ? matmul(realization.channels.g_r, s_s) : s_s;
  const ActivationMode mode = activation_mode(config);
  cache.rx.assign(config.layers, {});
  ComplexMatrix x = cache.x0_r;
  for (std::size_t l = 0; l < config.layers; ++l) {
    const ComplexMatrix& w_in = (l == 0 && !relay) ? fixed.bridge : fixed.rx[2 * l];
    x = layer_forward(x, w_in, fixed.rx[2 * l + 1], params.theta_r, params.b_r, l, mode,
                      config.activation_rapp, cache.rx[l]);
  }
  ComplexMatrix s_r = matmul(fixed.rx.back(), x);
  if (!realization.noise_rx.empty()) s_r += realization.noise_rx;
  return s_r;
}

RealMatrix classify_head(const ComplexMatrix& s_r, std::size_t batch, const ModelParams& params,
                         ForwardCache& cache) {
  const std::size_t n = s_r.rows();
  const std::size_t k = batch == 0 ? 0 : s_r.cols() / batch;
  const std::size_t f = 2 * n * k;
  if (params.fc_weight.cols() != f) {
    throw ConfigError("classify_head: head expects " + std::to_string(params.fc_weight.cols()) +
                      " features, signal provides " + std::to_string(f));
  }
  cache.features = RealMatrix(f, batch);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t r = 0; r < n; ++r) {
        const cplx v = s_r(r, b * k + c);
        cache.features(c * n + r, b) = v.real();
        cache.features(n * k + c * n + r, b) = v.imag();
      }
    }
  }
  const std::size_t classes = params.fc_weight.rows();
  RealMatrix logits(classes, batch);
  for (std::size_t i = 0; i < classes; ++i) {
    for (std::size_t b = 0; b < batch; ++b) logits(i, b) = params.fc_bias(i, 0);
    for (std::size_t j = 0; j < f; ++j) {
      const double w = params.fc_weight(i, j);
      for (std::size_t b = 0; b < batch; ++b) logits(i, b) += w * cache.features(j, b);
    }
  }
  cache.logits = logits;
  return logits;
}

RealMatrix forward_batch(const ComplexMatrix& s_c, std::size_t batch, const ModelParams& params,
                         const FixedPropagation& fixed, const ExperimentConfig& config,
                         Realization realization, ForwardCache& cache) {
  const std::size_t k = config.columns();
  require_shape(s_c, config.n_t, k * batch, "forward input");
  cache.batch = batch;
  cache.scheme = config.scheme;
  cache.realization = std::move(realization);
  cache.s_c = s_c;
  ComplexMatrix s_t = tx_sim_forward(s_c, params, fixed, config, cache);
  const bool relay = uses_relay(config.scheme);
  if (relay && config.normalize_power) {
    cache.tx_norm.input = s_t;
    s_t = normalize_power(s_t, k, cache.tx_norm.scales);
  } else {
    cache.tx_norm = {};
  }
  cache.s_t = s_t;
  if (relay) {
    cache.s_s = relay_forward(cache.s_t, params, config, cache.realization, cache);
  } else {
    cache.s_s = cache.s_t;
  }
  cache.s_r = rx_sim_forward(cache.s_s, params, fixed, config, cache.realization, cache);
  return classify_head(cache.s_r, batch, params, cache);
}

std::vector<double> forward(std::span<const double> image, const ModelParams& params,
                            const FixedPropagation& fixed, const ExperimentConfig& config,
                            RngStream& channel_stream, RngStream& noise_stream,
                            ForwardCache& cache) {
  Realization r = draw_realization(config, 1, channel_stream, noise_stream);
  const RealMatrix logits =
      forward_batch(pack_image(image, config), 1, params, fixed, config, std::move(r), cache);
  return {logits.values().begin(), logits.values().end()};
}

}  // namespace aisim
