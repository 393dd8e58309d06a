/*
 * Copyright 2026 the gmap authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "gmap/io/manifest.hpp"
#include "gmap/model/generative_map.hpp"

namespace gmap::model {

struct TrainingExample {
  std::vector<double> image;  // CHW in [0, 1]
  geom::PoseState state;
};

struct TrainingSet {
  std::vector<TrainingExample> examples;
  geom::NormStats stats;
};

// Decodes every frame of the dataset and normalizes poses with the
// manifest's statistics. Validates the resolution against the model config.
TrainingSet load_training_set(const io::DatasetManifest& manifest,
                              const std::filesystem::path& dataset_dir, const ModelConfig& config);

struct EpochStats {
  int epoch = 0;  // 1-based
  double total = 0.0, recon = 0.0, kl = 0.0;  // per-example means
};

using ProgressSink = std::function<void(const EpochStats&)>;

// Shuffled mini-batch training with Adam. Per-sample forward/backward runs on
// a small thread pool; gradients reduce in sample order, so results are
// bit-identical for any thread count. Aborts on a non-finite loss, naming the
// epoch and batch.
std::vector<EpochStats> train(GenerativeMapModel& model, const TrainingSet& data,
                              const ProgressSink& sink = {});

}  // namespace gmap::model
