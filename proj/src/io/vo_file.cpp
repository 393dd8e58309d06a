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

#include "gmap/io/vo_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gmap::io {

void save_vo(const std::filesystem::path& file, const std::vector<ControlSignal>& controls) {
  std::ofstream os(file);
  if (!os) throw std::runtime_error(file.string() + ": cannot open for writing");
  os << "GMAP_VO 1\n";
  char buf[256];
  for (std::size_t t = 0; t < controls.size(); ++t) {
    const auto& u = controls[t];
    std::snprintf(buf, sizeof(buf), "%zu %.17g %.17g %.17g %.17g %.17g %.17g", t, u[0], u[1],
                  u[2], u[3], u[4], u[5]);
    os << buf << "\n";
  }
  if (!os) throw std::runtime_error(file.string() + ": write failed");
}

std::vector<ControlSignal> load_vo(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error(file.string() + ": cannot open");
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": " + msg);
  };

  if (!std::getline(is, line)) {
    lineno = 1;
    fail("expected header 'GMAP_VO 1'");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "GMAP_VO 1") fail("expected header 'GMAP_VO 1'");

  std::vector<ControlSignal> controls;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::size_t t = 0;
    ControlSignal u{};
    if (!(ls >> t >> u[0] >> u[1] >> u[2] >> u[3] >> u[4] >> u[5])) {
      fail("expected 7 columns 't u0..u5'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
    if (t != controls.size()) {
      fail("transition index " + std::to_string(t) + ", expected " +
           std::to_string(controls.size()));
    }
    controls.push_back(u);
  }
  return controls;
}

}  // namespace gmap::io
