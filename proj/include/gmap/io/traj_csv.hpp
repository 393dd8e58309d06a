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
#include <iosfwd>
#include <string>
#include <vector>

#include "gmap/geom/pose.hpp"

namespace gmap::io {

// One estimated frame: normalized state, de-normalized pose, covariance trace.
struct TrajectoryRow {
  int frame = 0;
  geom::PoseState state;
  geom::Pose pose;
  double trace_cov = 0.0;
};

// header: frame,x0,x1,x2,x3,x4,x5,tx,ty,tz,qw,qx,qy,qz,trace_cov
std::string trajectory_csv_header();
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows);
void save_trajectory_csv(const std::filesystem::path& file, const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& file);

}  // namespace gmap::io
