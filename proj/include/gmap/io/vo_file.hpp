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

#include <array>
#include <filesystem>
#include <vector>

namespace gmap::io {

using ControlSignal = std::array<double, 6>;

// Control-signal text format, one transition per line:
//
//   GMAP_VO 1
//   <t> <u0> <u1> <u2> <u3> <u4> <u5>
//
// with t counting from 0 and 17 significant digits per value. A header-only
// file is a valid empty sequence.
void save_vo(const std::filesystem::path& file, const std::vector<ControlSignal>& controls);
std::vector<ControlSignal> load_vo(const std::filesystem::path& file);

}  // namespace gmap::io
