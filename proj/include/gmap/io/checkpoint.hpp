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
#include <string>
#include <vector>

#include "gmap/geom/pose.hpp"
#include "gmap/model/config.hpp"
#include "gmap/nn/params.hpp"

namespace gmap::io {

// Binary checkpoint, little-endian throughout:
//
//   magic "GMAP1", u32 version
//   ModelConfig fields, NormStats (6 doubles)
//   u32 tensor count, then per tensor:
//     u16 name length + bytes, u8 rank, i32 dims..., f64 payload...,
//     u64 FNV-1a checksum of the payload bytes
//
// Loading verifies magic, version, per-tensor checksums, and that the tensor
// set matches the target store exactly (names and shapes); parameters round
// trip bit-exactly.
struct CheckpointData {
  model::ModelConfig config;
  geom::NormStats stats;
};

void save_checkpoint(const std::filesystem::path& file, const model::ModelConfig& config,
                     const geom::NormStats& stats, const nn::ParamStore& params);

// Reads header only (cheap config/stats inspection).
CheckpointData read_checkpoint_header(const std::filesystem::path& file);

// Fills `params` in place; every stored tensor must exist in the store with
// the same shape and vice versa.
CheckpointData load_checkpoint_into(const std::filesystem::path& file, nn::ParamStore& params);

}  // namespace gmap::io
