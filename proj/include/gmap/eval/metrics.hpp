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

#include <span>
#include <string>
#include <vector>

#include "gmap/geom/pose.hpp"

namespace gmap::eval {

// Lower median: element (n-1)/2 of the sorted values.
double lower_median(std::vector<double> values);

// Per-frame translation (m) and rotation (deg) errors plus their medians.
struct LocalizationReport {
  std::vector<double> per_frame_m;
  std::vector<double> per_frame_deg;
  double median_m = 0.0;
  double median_deg = 0.0;
  // config echo
  double sigma_q = 0.0;
  std::string transition = "constant";
  double deviation = 0.0;
};

// (median translation error [m], median rotation error [deg]).
std::pair<double, double> median_errors(std::span<const geom::Pose> estimated,
                                        std::span<const geom::Pose> ground_truth);

LocalizationReport make_report(std::span<const geom::Pose> estimated,
                               std::span<const geom::Pose> ground_truth, double sigma_q,
                               std::string transition, double deviation);

}  // namespace gmap::eval
