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

#include "gmap/model/train.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "gmap/io/ppm.hpp"
#include "gmap/nn/adam.hpp"
#include "gmap/nn/rng.hpp"

namespace gmap::model {

TrainingSet load_training_set(const io::DatasetManifest& manifest,
                              const std::filesystem::path& dataset_dir,
                              const ModelConfig& config) {
  if (manifest.frames.empty()) throw std::invalid_argument("training set is empty");
  if (manifest.intrinsics.height != config.height || manifest.intrinsics.width != config.width) {
    throw std::invalid_argument(
        "dataset resolution " + std::to_string(manifest.intrinsics.width) + "x" +
        std::to_string(manifest.intrinsics.height) + " does not match model config " +
        std::to_string(config.width) + "x" + std::to_string(config.height));
  }
  if (config.channels != 3) {
    throw std::invalid_argument("PPM datasets carry 3 channels, config expects " +
                                std::to_string(config.channels));
  }
  TrainingSet set;
  set.stats = manifest.stats;
  set.examples.reserve(manifest.frames.size());
  for (const auto& frame : manifest.frames) {
    io::Image img = io::read_ppm(dataset_dir / frame.image_path);
    TrainingExample ex;
    ex.image = std::move(img.data);
    ex.state = geom::pose_to_state(frame.pose, manifest.stats);
    set.examples.push_back(std::move(ex));
  }
  return set;
}

namespace {

struct SampleResult {
  LossBreakdown loss;
  std::unordered_map<int, std::vector<double>> grads;
  std::exception_ptr error;
};

int resolve_threads(int configured, std::size_t batch) {
  int t = configured > 0 ? configured
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return static_cast<int>(std::min<std::size_t>(t, batch));
}

}  // namespace

std::vector<EpochStats> train(GenerativeMapModel& model, const TrainingSet& data,
                              const ProgressSink& sink) {
  const ModelConfig& cfg = model.config();
  if (data.examples.empty()) throw std::invalid_argument("train: empty training set");

  nn::AdamConfig adam_cfg;
  adam_cfg.learning_rate = cfg.learning_rate;
  adam_cfg.grad_clip = cfg.grad_clip;
  nn::Adam adam(model.params(), adam_cfg);

  // separate stream from the init RNG so weights and batching don't alias
  nn::Rng rng(cfg.seed ^ 0x9d2c5680faf1u);

  const std::size_t n = data.examples.size();
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);

  std::vector<EpochStats> log;
  log.reserve(cfg.epochs);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double sum_total = 0.0, sum_recon = 0.0, sum_kl = 0.0;

    for (std::size_t start = 0, batch_index = 0; start < n;
         start += cfg.batch_size, ++batch_index) {
      const std::size_t batch = std::min<std::size_t>(cfg.batch_size, n - start);

      // noise is drawn sequentially in batch order before the parallel part
      std::vector<std::vector<double>> noise(batch);
      for (auto& v : noise) v = rng.normal_vector(cfg.latent_dim);

      std::vector<SampleResult> results(batch);
      auto worker = [&](int tid, int stride) {
        for (std::size_t s = tid; s < batch; s += stride) {
          try {
            const TrainingExample& ex = data.examples[order[start + s]];
            auto graph = model.loss_graph(ex.image, ex.state, noise[s]);
            results[s].loss = {graph.total.item(), graph.recon.item(), graph.kl.item()};
            results[s].grads = nn::backward(graph.total);
          } catch (...) {
            results[s].error = std::current_exception();
          }
        }
      };
      const int threads = resolve_threads(cfg.threads, batch);
      if (threads <= 1) {
        worker(0, 1);
      } else {
        std::vector<std::thread> pool;
        pool.reserve(threads - 1);
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t, threads);
        worker(0, threads);
        for (auto& th : pool) th.join();
      }

      // ordered reduction: identical results for any thread count
      model.params().zero_grad();
      const double inv_batch = 1.0 / static_cast<double>(batch);
      for (std::size_t s = 0; s < batch; ++s) {
        if (results[s].error) std::rethrow_exception(results[s].error);
        if (!std::isfinite(results[s].loss.total)) {
          throw std::runtime_error("train: non-finite loss in epoch " + std::to_string(epoch) +
                                   ", batch " + std::to_string(batch_index) + " (sample " +
                                   std::to_string(order[start + s]) + ")");
        }
        for (const auto& [id, g] : results[s].grads) {
          model.params().accumulate(id, g, inv_batch);
        }
        sum_total += results[s].loss.total;
        sum_recon += results[s].loss.recon;
        sum_kl += results[s].loss.kl;
      }
      adam.step(model.params());
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.total = sum_total / static_cast<double>(n);
    stats.recon = sum_recon / static_cast<double>(n);
    stats.kl = sum_kl / static_cast<double>(n);
    log.push_back(stats);
    if (sink) sink(stats);
  }
  return log;
}

}  // namespace gmap::model
