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

#include "aisim/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "aisim/errors.hpp"

namespace aisim {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Packs images `order[first .. first+count)` of `data` side by side.
ComplexMatrix pack_items(const Dataset& data, std::span<const std::size_t> order,
                         const ExperimentConfig& config, std::vector<int>& labels) {
  const std::size_t p = data.pixels_per_image();
  if (p != config.pixels()) {
    throw ConfigError("dataset images have " + std::to_string(p) + " pixels, config expects " +
                      std::to_string(config.pixels()));
  }
  std::vector<double> pixels(order.size() * p);
  labels.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    data.pixels(order[i], std::span(pixels).subspan(i * p, p));
    labels[i] = data.label(order[i]);
  }
  return pack_batch(pixels, order.size(), config);
}

std::vector<std::size_t> shuffled_indices(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  return idx;
}

}  // namespace

LossResult softmax_cross_entropy(std::span<const double> logits, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= logits.size()) {
    throw ConfigError("softmax_cross_entropy: label out of range");
  }
  const double max = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  LossResult r;
  r.probs.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    r.probs[i] = std::exp(logits[i] - max);
    sum += r.probs[i];
  }
  for (auto& p : r.probs) p /= sum;
  r.loss = -(logits[static_cast<std::size_t>(label)] - max - std::log(sum));
  return r;
}

double batch_loss(const RealMatrix& logits, std::span<const int> labels, RealMatrix* dlogits) {
  const std::size_t classes = logits.rows();
  const std::size_t batch = logits.cols();
  if (labels.size() != batch) throw ConfigError("batch_loss: label count mismatch");
  if (dlogits != nullptr) *dlogits = RealMatrix(classes, batch);
  double total = 0.0;
  std::vector<double> column(classes);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t i = 0; i < classes; ++i) column[i] = logits(i, b);
    const LossResult r = softmax_cross_entropy(column, labels[b]);
    total += r.loss;
    if (dlogits != nullptr) {
      for (std::size_t i = 0; i < classes; ++i) {
        const double onehot = static_cast<int>(i) == labels[b] ? 1.0 : 0.0;
        (*dlogits)(i, b) = (r.probs[i] - onehot) / static_cast<double>(batch);
      }
    }
  }
  return total / static_cast<double>(batch);
}

AdamState AdamState::for_params(const ModelParams& params, const TrainConfig& train) {
  AdamState s;
  s.learning_rate = train.learning_rate;
  s.beta1 = train.beta1;
  s.beta2 = train.beta2;
  s.epsilon = train.epsilon;
  s.first_moment = params;
  s.second_moment = params;
  for (auto& f : s.first_moment.fields()) std::fill(f.values.begin(), f.values.end(), 0.0);
  for (auto& f : s.second_moment.fields()) std::fill(f.values.begin(), f.values.end(), 0.0);
  return s;
}

void adam_step(ModelParams& params, const GradientSet& grads, AdamState& state) {
  if (!params.same_shape(grads) || !params.same_shape(state.first_moment)) {
    throw ConfigError("adam_step: parameter, gradient and moment shapes differ");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  auto pf = params.fields();
  const auto gf = grads.fields();
  auto mf = state.first_moment.fields();
  auto vf = state.second_moment.fields();
  for (std::size_t f = 0; f < pf.size(); ++f) {
    auto p = pf[f].values;
    const auto g = gf[f].values;
    auto m = mf[f].values;
    auto v = vf[f].values;
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      p[i] -= state.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + state.epsilon);
      if (pf[f].kind == FieldKind::Angle) p[i] = wrap_angle(p[i]);
    }
  }
}

double evaluate(const ModelParams& params, const ExperimentConfig& config,
                const FixedPropagation& fixed, const Dataset& test_set, std::size_t n_draws,
                const SeededRng& rng, std::size_t chunk) {
  if (test_set.size() == 0 || n_draws == 0) return 0.0;
  if (chunk == 0) throw ConfigError("evaluate: chunk must be positive");
  std::vector<std::size_t> all(test_set.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  double accuracy_sum = 0.0;
  ForwardCache cache;
  std::vector<int> labels;
  for (std::size_t d = 0; d < n_draws; ++d) {
    RngStream channel_stream = rng.stream("eval-channel", d);
    RngStream noise_stream = rng.stream("eval-noise", d);
    ChannelDraw channels;
    if (uses_relay(config.scheme)) channels = draw_channels(config, channel_stream, d);
    std::size_t correct = 0;
    for (std::size_t first = 0; first < all.size(); first += chunk) {
      const std::size_t count = std::min(chunk, all.size() - first);
      const ComplexMatrix s_c =
          pack_items(test_set, std::span(all).subspan(first, count), config, labels);
      const RealMatrix logits = forward_batch(s_c, count, params, fixed, config,
                                              draw_noise(config, count, channels, noise_stream),
                                              cache);
      for (std::size_t b = 0; b < count; ++b) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < logits.rows(); ++i)
          if (logits(i, b) > logits(best, b)) best = i;
        if (static_cast<int>(best) == labels[b]) ++correct;
      }
    }
    accuracy_sum += static_cast<double>(correct) / static_cast<double>(all.size());
  }
  return accuracy_sum / static_cast<double>(n_draws);
}

TrainResult train(const ExperimentConfig& config, const TrainConfig& tc, const Dataset& train_set,
                  const Dataset& test_set, const EpochCallback& on_epoch) {
  config.validate();
  tc.validate();
  const SeededRng root(tc.seed);
  RngStream init = root.stream("init");
  RngStream shuffle = root.stream("shuffle");
  RngStream channel_stream = root.stream("channel");
  RngStream noise_stream = root.stream("noise");

  const FixedPropagation fixed = build_propagation(config);
  TrainResult result{ModelParams::initialize(config, init), {}};
  if (tc.epochs == 0) return result;

  const Dataset train_data = train_set.head(tc.train_limit);
  const Dataset test_data = test_set.head(tc.test_limit);
  if (train_data.size() == 0) throw ConfigError("train: empty training set");

  AdamState adam = AdamState::for_params(result.params, tc);
  ForwardCache cache;
  std::vector<int> labels;
  std::uint64_t draws = 0;
  ChannelDraw channels;
  const bool relay = uses_relay(config.scheme);
  auto next_channels = [&] {
    if (relay) channels = draw_channels(config, channel_stream, draws++);
  };
  if (tc.channel_policy == ChannelPolicy::Fixed) next_channels();

  for (int epoch = 1; epoch <= tc.epochs; ++epoch) {
    const auto start = Clock::now();
    if (tc.channel_policy == ChannelPolicy::PerEpoch) next_channels();
    const std::vector<std::size_t> order = shuffled_indices(train_data.size(), shuffle);
    double loss_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t first = 0; first < order.size(); first += tc.batch_size, ++batch_index) {
      const std::size_t count = std::min(tc.batch_size, order.size() - first);
      if (tc.channel_policy == ChannelPolicy::PerBatch) next_channels();
      const ComplexMatrix s_c =
          pack_items(train_data, std::span(order).subspan(first, count), config, labels);
      const RealMatrix logits =
          forward_batch(s_c, count, result.params, fixed, config,
                        draw_noise(config, count, channels, noise_stream), cache);
      RealMatrix dlogits;
      const double loss = batch_loss(logits, labels, &dlogits);
      if (!std::isfinite(loss)) throw TrainingDiverged(epoch, batch_index);
      loss_sum += loss * static_cast<double>(count);
      const GradientSet grads = backward(cache, dlogits, result.params, fixed, config);
      adam_step(result.params, grads, adam);
    }
    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(order.size());
    const std::size_t draws_now = epoch == tc.epochs ? tc.eval_draws : tc.epoch_eval_draws;
    m.test_accuracy =
        evaluate(result.params, config, fixed, test_data, draws_now, root, tc.eval_chunk);
    m.wall_seconds = seconds_since(start);
    result.metrics.push_back(m);
    if (on_epoch) on_epoch(m);
  }
  return result;
}

ExperimentConfig tiny_config(Scheme scheme) {
  ExperimentConfig c;
  c.n_t = c.n_s = c.n_r = 2;
  c.meta_atoms = 4;
  c.layers = 1;
  c.image_channels = 1;
  c.image_height = 3;
  c.image_width = 4;
  c.scheme = scheme;
  c.snr_db = 10.0;
  return c;
}

GradCheckReport gradient_check(const ExperimentConfig& config, std::uint64_t seed, double rtol,
                               std::size_t batch) {
  const auto start = Clock::now();
  const SeededRng root(seed);
  RngStream init = root.stream("gradcheck-init");
  RngStream data = root.stream("gradcheck-data");
  RngStream channel_stream = root.stream("gradcheck-channel");
  RngStream noise_stream = root.stream("gradcheck-noise");

  const FixedPropagation fixed = build_propagation(config);
  ModelParams params = ModelParams::initialize(config, init);
  // Nonzero biases and head bias so every path carries signal.
  for (auto& f : params.fields()) {
    if (f.name == "b_t" || f.name == "b_r" || f.name == "b_s" || f.name == "fc_bias") {
      for (auto& v : f.values) v = 0.5 * init.normal();
    }
  }
  std::vector<double> pixels(batch * config.pixels());
  for (auto& p : pixels) p = data.uniform();
  std::vector<int> labels(batch);
  for (auto& l : labels) l = static_cast<int>(data.below(config.num_classes));
  const ComplexMatrix s_c = pack_batch(pixels, batch, config);
  const Realization frozen = draw_realization(config, batch, channel_stream, noise_stream);

  ForwardCache cache;
  auto loss_at = [&](const ModelParams& p) {
    ForwardCache c;
    return batch_loss(forward_batch(s_c, batch, p, fixed, config, frozen, c), labels);
  };
  forward_batch(s_c, batch, params, fixed, config, frozen, cache);
  const GradientSet grads = backward(cache, labels, params, fixed, config);

  GradCheckReport report;
  report.scheme = config.scheme;
  auto pf = params.fields();
  const auto gf = grads.fields();
  for (std::size_t f = 0; f < pf.size(); ++f) {
    for (std::size_t i = 0; i < pf[f].values.size(); ++i) {
      double& p = pf[f].values[i];
      const double saved = p;
      const double h = 1e-5 * std::max(1.0, std::abs(saved));
      p = saved + h;
      const double up = loss_at(params);
      p = saved - h;
      const double down = loss_at(params);
      p = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = gf[f].values[i];
      const double rel =
          std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-6});
      ++report.checked;
      report.max_rel_error = std::max(report.max_rel_error, rel);
      if (!(rel < rtol)) report.failures.push_back({pf[f].name, i, analytic, numeric, rel});
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace aisim
