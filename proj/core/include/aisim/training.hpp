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
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aisim/config.hpp"
#include "aisim/dataset.hpp"
#include "aisim/forward.hpp"
#include "aisim/params.hpp"
#include "aisim/rng.hpp"

namespace aisim {

struct LossResult {
  double loss = 0.0;
  std::vector<double> probs;
};

/// Log-sum-exp stabilized softmax and -log p[label].
LossResult softmax_cross_entropy(std::span<const double> logits, int label);

/// Mean cross-entropy over the batch columns of `logits`. When `dlogits` is
/// given it receives d(mean loss)/d(logits).
double batch_loss(const RealMatrix& logits, std::span<const int> labels,
                  RealMatrix* dlogits = nullptr);

/// Reverse-mode gradient of a scalar loss through the cached forward pass,
/// given dL/dlogits (classes x batch). Complex intermediates are treated as
/// pairs of reals; channel and noise draws are constants.
GradientSet backward(const ForwardCache& cache, const RealMatrix& dlogits,
                     const ModelParams& params, const FixedPropagation& fixed,
                     const ExperimentConfig& config);

/// Gradient of the mean cross-entropy of the cached batch.
GradientSet backward(const ForwardCache& cache, std::span<const int> labels,
                     const ModelParams& params, const FixedPropagation& fixed,
                     const ExperimentConfig& config);

struct AdamState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::int64_t step = 0;
  ModelParams first_moment;
  ModelParams second_moment;

  static AdamState for_params(const ModelParams& params, const TrainConfig& train);
};

/// Bias-corrected Adam update on every real scalar; angles are then wrapped
/// into [0, 2 pi).
void adam_step(ModelParams& params, const GradientSet& grads, AdamState& state);

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double test_accuracy = 0.0;
  double wall_seconds = 0.0;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochMetrics> metrics;
};

using EpochCallback = std::function<void(const EpochMetrics&)>;

/// Mini-batch training. Streams derived from train.seed: "init" for
/// parameters, "shuffle" for batch order, "channel" and "noise" for the
/// wireless links. Every epoch ends with a test evaluation (see evaluate);
/// the last one uses train.eval_draws draws.
TrainResult train(const ExperimentConfig& config, const TrainConfig& train, const Dataset& train_set,
                  const Dataset& test_set, const EpochCallback& on_epoch = {});

/// Mean top-1 accuracy over n_draws independent realizations. Draw d uses
/// streams ("eval-channel", d) and ("eval-noise", d) of `rng`: one channel draw
/// for the whole test set and fresh noise for each image.
double evaluate(const ModelParams& params, const ExperimentConfig& config,
                const FixedPropagation& fixed, const Dataset& test_set, std::size_t n_draws,
                const SeededRng& rng, std::size_t chunk = 500);

/// Configuration used by the gradient checks: N_t = N_s = N_r = 2, M = 4,
/// L = 1, 1x3x4 images (K = 3).
ExperimentConfig tiny_config(Scheme scheme);

struct GradCheckEntry {
  std::string field;
  std::size_t index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  Scheme scheme = Scheme::RelayNonlinear;
  std::size_t checked = 0;
  double max_rel_error = 0.0;
  std::vector<GradCheckEntry> failures;
  double seconds = 0.0;

  bool passed() const { return checked > 0 && failures.empty(); }
};

/// Compares backward() against central finite differences of the loss for
/// every real parameter, on a random batch under one frozen channel and noise
/// realization. Step h = 1e-5 * max(1, |p|). The relative error is
/// |a - n| / max(|a|, |n|, 1e-6).
GradCheckReport gradient_check(const ExperimentConfig& config, std::uint64_t seed,
                               double rtol = 1e-4, std::size_t batch = 2);

}  // namespace aisim
