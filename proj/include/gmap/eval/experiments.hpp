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
#include <optional>
#include <vector>

#include "gmap/ekf/ekf.hpp"
#include "gmap/eval/metrics.hpp"
#include "gmap/io/manifest.hpp"
#include "gmap/io/traj_csv.hpp"
#include "gmap/model/generative_map.hpp"

namespace gmap::eval {

// Decoded localization dataset: images plus ground-truth poses.
struct Dataset {
  io::DatasetManifest manifest;
  std::vector<std::vector<double>> images;
  std::vector<geom::Pose> gt_poses;
};

Dataset load_dataset(const std::filesystem::path& dataset_dir);

// Localizes the dataset and scores it against ground truth. States are
// normalized with `stats` (the statistics the checkpoint was trained with);
// `deviation` is added to every component of the true initial state.
LocalizationReport localize_and_report(const model::GenerativeMapModel& model,
                                       const Dataset& dataset, const geom::NormStats& stats,
                                       double sigma_q, const ekf::TransitionModel& transition,
                                       double deviation);

std::vector<io::TrajectoryRow> to_trajectory_rows(const std::vector<ekf::TrajectoryPoint>& points,
                                                  const geom::NormStats& stats);

// Pure integration of the control signals from the initial state.
std::vector<geom::PoseState> dead_reckon(const geom::PoseState& init,
                                         const std::vector<io::ControlSignal>& controls);

struct SweepRow {
  double sigma_q = 0.0;
  double deviation = 0.0;
  LocalizationReport report;
};

// Rows ordered by strictly decreasing sigma_q (deviation-major within one
// sigma for the deviation experiment). `dead_reckoning`, when present, is
// the measurement-free baseline of the fusion experiment.
struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<SweepRow> dead_reckoning;
};

// Constant-transition sweep over sigma_q with correct initialization.
SweepResult sweep_sigma_q(const model::GenerativeMapModel& model, const Dataset& dataset,
                          const geom::NormStats& stats, std::vector<double> sigma_list);

// For each sigma_q and absolute deviation level, runs +level and -level and
// averages the two runs (medians and per-frame curves).
SweepResult deviation_experiment(const model::GenerativeMapModel& model, const Dataset& dataset,
                                 const geom::NormStats& stats, std::vector<double> deviations,
                                 std::vector<double> sigma_list);

// Control-transition arms over sigma_q plus the dead-reckoning baseline.
SweepResult vo_fusion_experiment(const model::GenerativeMapModel& model, const Dataset& dataset,
                                 const geom::NormStats& stats,
                                 const std::vector<io::ControlSignal>& controls,
                                 std::vector<double> sigma_list);

// CSV: "sigma_q,deviation,median_m,median_deg"; the dead-reckoning baseline
// row is encoded with sigma_q = 0 (not a valid arm value).
std::string report_csv_header();
void write_report_csv(std::ostream& os, const SweepResult& result);
struct ReportCsvRow {
  double sigma_q = 0.0, deviation = 0.0, median_m = 0.0, median_deg = 0.0;
};
std::vector<ReportCsvRow> parse_report_csv(std::istream& is);

}  // namespace gmap::eval
