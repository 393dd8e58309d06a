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

#include "gmap/eval/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace gmap::eval {

double lower_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("lower_median: empty input");
  const std::size_t k = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + k, values.end());
  return values[k];
}

std::pair<double, double> median_errors(std::span<const geom::Pose> estimated,
                                        std::span<const geom::Pose> ground_truth) {
  if (estimated.size() != ground_truth.size()) {
    throw std::invalid_argument("median_errors: trajectory lengths differ (" +
                                std::to_string(estimated.size()) + " vs " +
                                std::to_string(ground_truth.size()) + ")");
  }
  if (estimated.empty()) throw std::invalid_argument("median_errors: empty trajectories");
  std::vector<double> em(estimated.size()), ed(estimated.size());
  for (std::size_t i = 0; i < estimated.size(); ++i) {
    em[i] = geom::translation_error_m(estimated[i].translation, ground_truth[i].translation);
    ed[i] = geom::rotation_error_deg(estimated[i].rotation, ground_truth[i].rotation);
  }
  return {lower_median(std::move(em)), lower_median(std::move(ed))};
}

LocalizationReport make_report(std::span<const geom::Pose> estimated,
                               std::span<const geom::Pose> ground_truth, double sigma_q,
                               std::string transition, double deviation) {
  if (estimated.size() != ground_truth.size() || estimated.empty()) {
    throw std::invalid_argument("make_report: bad trajectory lengths");
  }
  LocalizationReport r;
  r.sigma_q = sigma_q;
  r.transition = std::move(transition);
  r.deviation = deviation;
  r.per_frame_m.resize(estimated.size());
  r.per_frame_deg.resize(estimated.size());
  for (std::size_t i = 0; i < estimated.size(); ++i) {
    r.per_frame_m[i] =
        geom::translation_error_m(estimated[i].translation, ground_truth[i].translation);
    r.per_frame_deg[i] =
        geom::rotation_error_deg(estimated[i].rotation, ground_truth[i].rotation);
  }
  r.median_m = lower_median(r.per_frame_m);
  r.median_deg = lower_median(r.per_frame_deg);
  return r;
}

}  // namespace gmap::eval
