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

#include <cmath>
#include <string>

#include "aisim/errors.hpp"
#include "aisim/training.hpp"

namespace aisim {
namespace {

// Pull a gradient back through activation(pre).
ComplexMatrix activation_backward(const ComplexMatrix& grad_out, const ComplexMatrix& pre,
                                  ActivationMode mode, const RappParams& rapp_params) {
  if (mode == ActivationMode::Identity) return grad_out;
  ComplexMatrix g(grad_out.rows(), grad_out.cols());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.data()[i] = rapp_pullback(rapp_derivatives(pre.data()[i], rapp_params), grad_out.data()[i]);
  }
  return g;
}

// y = x / s per K-column block, s = sqrt(mean |x|^2):
// dL/dx = g/s - x * Re<g, y> / (n s^2).
ComplexMatrix normalize_backward(const ComplexMatrix& grad_y, const NormCache& nc,
                                 std::size_t block_cols) {
  ComplexMatrix g = grad_y;
  const ComplexMatrix& x = nc.input;
  const double n = static_cast<double>(x.rows() * block_cols);
  for (std::size_t b = 0; b < nc.scales.size(); ++b) {
    const double s = nc.scales[b];
    const std::size_t c0 = b * block_cols;
    double inner = 0.0;  // Re sum conj(g) * x
    bool zero_block = true;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      for (std::size_t c = c0; c < c0 + block_cols; ++c) {
        inner += std::real(std::conj(grad_y(r, c)) * x(r, c));
        if (x(r, c) != cplx{}) zero_block = false;
      }
    }
    // All-zero blocks pass through unscaled (scale fixed at 1).
    if (zero_block) continue;
    const double coeff = inner / (n * s * s * s);
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = c0; c < c0 + block_cols; ++c)
        g(r, c) = grad_y(r, c) / s - coeff * x(r, c);
  }
  return g;
}

void accumulate_bias(ComplexMatrix& grad_bias, std::size_t col, const ComplexMatrix& grad_pre) {
  for (std::size_t r = 0; r < grad_pre.rows(); ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < grad_pre.cols(); ++c) s += grad_pre(r, c);
    grad_bias(r, col) += s;
  }
}

// Backward through one layer pair. Returns dL/d(layer input).
ComplexMatrix layer_backward(const ComplexMatrix& grad_out, const LayerCache& lc,
                             const ComplexMatrix& w_in, const ComplexMatrix& w_out,
                             const RealMatrix& theta, std::size_t layer, ActivationMode mode,
                             const RappParams& rapp_params, RealMatrix& grad_theta,
                             ComplexMatrix& grad_bias) {
  const ComplexMatrix grad_pre = activation_backward(grad_out, lc.pre, mode, rapp_params);
  accumulate_bias(grad_bias, layer, grad_pre);
  ComplexMatrix grad_phased = matmul_adjoint_left(w_out, grad_pre);
  const std::vector<cplx> phase = phase_factors(theta, layer);
  // phased = e^{j theta} * incident, so dL/dtheta = Re(conj(g) * j * phased) = Im(g conj(phased))
  for (std::size_t m = 0; m < grad_phased.rows(); ++m) {
    double dtheta = 0.0;
    const cplx back = std::conj(phase[m]);
    for (std::size_t c = 0; c < grad_phased.cols(); ++c) {
      const cplx g = grad_phased(m, c);
      dtheta += std::imag(g * std::conj(lc.phased(m, c)));
      grad_phased(m, c) = back * g;
    }
    grad_theta(layer, m) += dtheta;
  }
  return matmul_adjoint_left(w_in, grad_phased);
}

}  // namespace

GradientSet backward(const ForwardCache& cache, const RealMatrix& dlogits,
                     const ModelParams& params, const FixedPropagation& fixed,
                     const ExperimentConfig& config) {
  const std::size_t batch = cache.batch;
  const std::size_t k = config.columns();
  if (dlogits.rows() != params.fc_weight.rows() || dlogits.cols() != batch ||
      cache.features.cols() != batch || cache.scheme != config.scheme ||
      cache.tx.size() != config.layers || cache.rx.size() != config.layers) {
    throw ConfigError("backward: cache does not match parameters/config");
  }
  GradientSet grads = ModelParams::zeros(config);
  if (!grads.same_shape(params)) throw ConfigError("backward: parameter shapes do not match config");

  // Head.
  const std::size_t classes = params.fc_weight.rows();
  const std::size_t f = params.fc_weight.cols();
  RealMatrix grad_features(f, batch);
  for (std::size_t i = 0; i < classes; ++i) {
    double bias = 0.0;
    for (std::size_t b = 0; b < batch; ++b) bias += dlogits(i, b);
    grads.fc_bias(i, 0) = bias;
    for (std::size_t j = 0; j < f; ++j) {
      double w = 0.0;
      const double wij = params.fc_weight(i, j);
      for (std::size_t b = 0; b < batch; ++b) {
        w += dlogits(i, b) * cache.features(j, b);
        grad_features(j, b) += wij * dlogits(i, b);
      }
      grads.fc_weight(i, j) = w;
    }
  }
  const std::size_t n_r = cache.s_r.rows();
  ComplexMatrix grad_s_r(n_r, k * batch);
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < n_r; ++r)
        grad_s_r(r, b * k + c) = {grad_features(c * n_r + r, b),
                                  grad_features(n_r * k + c * n_r + r, b)};

  // Receiver stack; additive noise passes the gradient unchanged.
  const bool relay = uses_relay(config.scheme);
  const ActivationMode mode = activation_mode(config);
  ComplexMatrix g = matmul_adjoint_left(fixed.rx.back(), grad_s_r);
  for (std::size_t l = config.layers; l-- > 0;) {
    const ComplexMatrix& w_in = (l == 0 && !relay) ? fixed.bridge : fixed.rx[2 * l];
    g = layer_backward(g, cache.rx[l], w_in, fixed.rx[2 * l + 1], params.theta_r, l, mode,
                       config.activation_rapp, grads.theta_r, grads.b_r);
  }

  if (relay) {
    const ChannelDraw& ch = cache.realization.channels;
    g = matmul_adjoint_left(ch.g_r, g);  // dL/dS_s
    if (config.normalize_power) g = normalize_backward(g, cache.relay_norm, k);
    g = activation_backward(g, cache.relay_pre, amplifier_mode(config), config.pa_rapp);
    accumulate_bias(grads.b_s, 0, g);
    grads.z = matmul_adjoint_right(g, cache.s_hat);
    g = matmul_adjoint_left(params.z, g);  // dL/dS_hat
    if (config.scheme != Scheme::RelayNoCP) g = matmul_adjoint_left(ch.g_t_pinv, g);
    g = matmul_adjoint_left(ch.g_t, g);  // dL/dS_t (normalized)
    if (config.normalize_power) g = normalize_backward(g, cache.tx_norm, k);
  }

  for (std::size_t l = config.layers; l-- > 0;) {
    g = layer_backward(g, cache.tx[l], fixed.tx[2 * l], fixed.tx[2 * l + 1], params.theta_t, l,
                       mode, config.activation_rapp, grads.theta_t, grads.b_t);
  }
  return grads;
}

GradientSet backward(const ForwardCache& cache, std::span<const int> labels,
                     const ModelParams& params, const FixedPropagation& fixed,
                     const ExperimentConfig& config) {
  RealMatrix dlogits;
  batch_loss(cache.logits, labels, &dlogits);
  return backward(cache, dlogits, params, fixed, config);
}

}  // namespace aisim
