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

#include "gmap/io/traj_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gmap::io {

std::string trajectory_csv_header() {
  return "frame,x0,x1,x2,x3,x4,x5,tx,ty,tz,qw,qx,qy,qz,trace_cov";
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
  os << trajectory_csv_header() << "\n";
  char buf[640];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                  r.frame, r.state.x[0], r.state.x[1], r.state.x[2], r.state.x[3], r.state.x[4],
                  r.state.x[5], r.pose.translation[0], r.pose.translation[1],
                  r.pose.translation[2], r.pose.rotation.w, r.pose.rotation.x, r.pose.rotation.y,
                  r.pose.rotation.z, r.trace_cov);
    os << buf << "\n";
  }
}

void save_trajectory_csv(const std::filesystem::path& file,
                         const std::vector<TrajectoryRow>& rows) {
  std::ofstream os(file);
  if (!os) throw std::runtime_error(file.string() + ": cannot open for writing");
  write_trajectory_csv(os, rows);
  if (!os) throw std::runtime_error(file.string() + ": write failed");
}

std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error(file.string() + ": cannot open");
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": " + msg);
  };

  if (!std::getline(is, line)) {
    lineno = 1;
    fail("empty trajectory file");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != trajectory_csv_header()) fail("unexpected header");

  std::vector<TrajectoryRow> rows;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) fail("malformed number '" + cell + "'");
      } catch (const std::invalid_argument&) {
        fail("malformed number '" + cell + "'");
      }
    }
    if (vals.size() != 15) fail("expected 15 columns, got " + std::to_string(vals.size()));

    TrajectoryRow r;
    r.frame = static_cast<int>(vals[0]);
    for (int i = 0; i < 6; ++i) r.state.x[i] = vals[1 + i];
    geom::Vec3 t{vals[7], vals[8], vals[9]};
    geom::Quat q{vals[10], vals[11], vals[12], vals[13]};
    try {
      r.pose = geom::Pose::make(t, q);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    r.trace_cov = vals[14];
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gmap::io
