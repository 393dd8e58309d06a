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

#include "gmap/eval/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include "gmap/io/ppm.hpp"

namespace gmap::eval {

namespace {

void check_sigma_list(const std::vector<double>& sigma_list) {
  if (sigma_list.empty()) throw std::invalid_argument("sweep: empty sigma_q list");
  for (std::size_t i = 0; i < sigma_list.size(); ++i) {
    if (!(sigma_list[i] > 0.0)) throw std::invalid_argument("sweep: sigma_q must be > 0");
    if (i > 0 && !(sigma_list[i] < sigma_list[i - 1])) {
      throw std::invalid_argument("sweep: sigma_q values must be strictly decreasing");
    }
  }
}

std::vector<geom::Pose> points_to_poses(const std::vector<ekf::TrajectoryPoint>& points,
                                        const geom::NormStats& stats) {
  std::vector<geom::Pose> poses;
  poses.reserve(points.size());
  for (const auto& p : points) poses.push_back(geom::state_to_pose(p.state, stats));
  return poses;
}

// sign-averaged report for the deviation experiment
LocalizationReport average_reports(const LocalizationReport& a, const LocalizationReport& b) {
  LocalizationReport r = a;
  r.median_m = 0.5 * (a.median_m + b.median_m);
  r.median_deg = 0.5 * (a.median_deg + b.median_deg);
  for (std::size_t i = 0; i < r.per_frame_m.size(); ++i) {
    r.per_frame_m[i] = 0.5 * (a.per_frame_m[i] + b.per_frame_m[i]);
    r.per_frame_deg[i] = 0.5 * (a.per_frame_deg[i] + b.per_frame_deg[i]);
  }
  return r;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& dataset_dir) {
  Dataset d;
  d.manifest = io::load_manifest(io::manifest_path(dataset_dir));
  d.images.reserve(d.manifest.frames.size());
  d.gt_poses.reserve(d.manifest.frames.size());
  for (const auto& frame : d.manifest.frames) {
    d.images.push_back(io::read_ppm(dataset_dir / frame.image_path).data);
    d.gt_poses.push_back(frame.pose);
  }
  return d;
}

LocalizationReport localize_and_report(const model::GenerativeMapModel& model,
                                       const Dataset& dataset, const geom::NormStats& stats,
                                       double sigma_q, const ekf::TransitionModel& transition,
                                       double deviation) {
  if (dataset.images.empty()) throw std::invalid_argument("localize_and_report: empty dataset");
  geom::PoseState init = geom::pose_to_state(dataset.gt_poses.front(), stats);
  for (double& v : init.x) v += deviation;

  const auto points = ekf::run_localization(model, dataset.images, transition,
                                            ekf::NoiseConfig{sigma_q}, init);
  const auto poses = points_to_poses(points, stats);
  const char* name =
      transition.kind == ekf::TransitionModel::Kind::constant ? "constant" : "control";
  return make_report(poses, dataset.gt_poses, sigma_q, name, deviation);
}

std::vector<io::TrajectoryRow> to_trajectory_rows(const std::vector<ekf::TrajectoryPoint>& points,
                                                  const geom::NormStats& stats) {
  std::vector<io::TrajectoryRow> rows;
  rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    io::TrajectoryRow r;
    r.frame = static_cast<int>(i);
    r.state = points[i].state;
    r.pose = geom::state_to_pose(points[i].state, stats);
    r.trace_cov = points[i].covariance.trace();
    rows.push_back(r);
  }
  return rows;
}

std::vector<geom::PoseState> dead_reckon(const geom::PoseState& init,
                                         const std::vector<io::ControlSignal>& controls) {
  std::vector<geom::PoseState> states;
  states.reserve(controls.size() + 1);
  states.push_back(init);
  for (const auto& u : controls) {
    geom::PoseState next = states.back();
    for (int i = 0; i < 6; ++i) next.x[i] += u[i];
    states.push_back(next);
  }
  return states;
}

SweepResult sweep_sigma_q(const model::GenerativeMapModel& model, const Dataset& dataset,
                          const geom::NormStats& stats, std::vector<double> sigma_list) {
  check_sigma_list(sigma_list);
  const ekf::TransitionModel constant;

  std::vector<std::future<LocalizationReport>> futures;
  futures.reserve(sigma_list.size());
  for (double sigma : sigma_list) {
    futures.push_back(std::async(std::launch::async, [&, sigma] {
      return localize_and_report(model, dataset, stats, sigma, constant, 0.0);
    }));
  }
  SweepResult result;
  for (std::size_t i = 0; i < sigma_list.size(); ++i) {
    result.rows.push_back({sigma_list[i], 0.0, futures[i].get()});
  }
  return result;
}

SweepResult deviation_experiment(const model::GenerativeMapModel& model, const Dataset& dataset,
                                 const geom::NormStats& stats, std::vector<double> deviations,
                                 std::vector<double> sigma_list) {
  check_sigma_list(sigma_list);
  if (deviations.empty()) throw std::invalid_argument("deviation_experiment: empty grid");
  const ekf::TransitionModel constant;

  SweepResult result;
  for (double sigma : sigma_list) {
    for (double level : deviations) {
      if (level < 0.0) {
        throw std::invalid_argument("deviation_experiment: levels are absolute (>= 0)");
      }
      if (level == 0.0) {
        result.rows.push_back(
            {sigma, 0.0, localize_and_report(model, dataset, stats, sigma, constant, 0.0)});
        continue;
      }
      auto plus = std::async(std::launch::async, [&, sigma, level] {
        return localize_and_report(model, dataset, stats, sigma, constant, level);
      });
      auto minus = std::async(std::launch::async, [&, sigma, level] {
        return localize_and_report(model, dataset, stats, sigma, constant, -level);
      });
      // the two signed runs are averaged per absolute level (medians and
      // per-frame curves alike)
      result.rows.push_back({sigma, level, average_reports(plus.get(), minus.get())});
    }
  }
  return result;
}

SweepResult vo_fusion_experiment(const model::GenerativeMapModel& model, const Dataset& dataset,
                                 const geom::NormStats& stats,
                                 const std::vector<io::ControlSignal>& controls,
                                 std::vector<double> sigma_list) {
  check_sigma_list(sigma_list);
  if (controls.size() != dataset.images.size() - 1) {
    throw std::invalid_argument("vo_fusion_experiment: need one control per frame transition");
  }
  ekf::TransitionModel transition;
  transition.kind = ekf::TransitionModel::Kind::control;
  transition.controls = controls;

  std::vector<std::future<LocalizationReport>> futures;
  futures.reserve(sigma_list.size());
  for (double sigma : sigma_list) {
    futures.push_back(std::async(std::launch::async, [&, sigma] {
      return localize_and_report(model, dataset, stats, sigma, transition, 0.0);
    }));
  }

  SweepResult result;
  for (std::size_t i = 0; i < sigma_list.size(); ++i) {
    result.rows.push_back({sigma_list[i], 0.0, futures[i].get()});
  }

  // measurement-free baseline: integrate the controls from the true start
  const auto states = dead_reckon(geom::pose_to_state(dataset.gt_poses.front(), stats), controls);
  std::vector<geom::Pose> poses;
  poses.reserve(states.size());
  for (const auto& s : states) poses.push_back(geom::state_to_pose(s, stats));
  result.dead_reckoning =
      SweepRow{0.0, 0.0, make_report(poses, dataset.gt_poses, 0.0, "dead_reckoning", 0.0)};
  return result;
}

std::string report_csv_header() { return "sigma_q,deviation,median_m,median_deg"; }

void write_report_csv(std::ostream& os, const SweepResult& result) {
  os << report_csv_header() << "\n";
  char buf[256];
  auto put = [&](const SweepRow& row) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", row.sigma_q, row.deviation,
                  row.report.median_m, row.report.median_deg);
    os << buf << "\n";
  };
  for (const auto& row : result.rows) put(row);
  if (result.dead_reckoning) put(*result.dead_reckoning);
}

std::vector<ReportCsvRow> parse_report_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != report_csv_header()) {
    throw std::runtime_error("report CSV: unexpected header");
  }
  std::vector<ReportCsvRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    ReportCsvRow r;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r.sigma_q, &r.deviation, &r.median_m,
                    &r.median_deg) != 4) {
      throw std::runtime_error("report CSV line " + std::to_string(lineno) + ": malformed row");
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gmap::eval
