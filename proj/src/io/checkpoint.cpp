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

#include "gmap/io/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <set>
#include <stdexcept>

namespace gmap::io {

namespace {

constexpr char kMagic[5] = {'G', 'M', 'A', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& msg) {
  throw std::runtime_error(path.string() + ": " + msg);
}

std::uint64_t fnv1a(const unsigned char* bytes, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

class Writer {
 public:
  Writer(const std::filesystem::path& path) : path_(path), os_(path, std::ios::binary) {
    if (!os_) fail(path, "cannot open for writing");
  }
  void bytes(const void* p, std::size_t n) {
    os_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u16(std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
    bytes(b, 2);
  }
  void u32(std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 8);
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void finish() {
    os_.flush();
    if (!os_) fail(path_, "write failed");
  }

 private:
  std::filesystem::path path_;
  std::ofstream os_;
};

class Reader {
 public:
  Reader(const std::filesystem::path& path) : path_(path), is_(path, std::ios::binary) {
    if (!is_) fail(path, "cannot open");
  }
  void bytes(void* p, std::size_t n) {
    is_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!is_) fail(path_, "truncated checkpoint");
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint16_t u16() {
    unsigned char b[2];
    bytes(b, 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream is_;
};

void write_header(Writer& w, const model::ModelConfig& c, const geom::NormStats& s) {
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(kVersion);
  w.i32(c.latent_dim);
  w.i32(c.channels);
  w.i32(c.height);
  w.i32(c.width);
  w.i32(c.base_channels);
  w.i32(c.pose_hidden);
  w.f64(c.decoder_variance);
  w.f64(c.learning_rate);
  w.i32(c.epochs);
  w.i32(c.batch_size);
  w.u64(c.seed);
  w.f64(c.grad_clip);
  w.i32(c.threads);
  for (double v : s.center) w.f64(v);
  for (double v : s.half_extent) w.f64(v);
}

CheckpointData read_header(Reader& r) {
  char magic[5];
  r.bytes(magic, 5);
  if (std::memcmp(magic, kMagic, 5) != 0) fail(r.path(), "not a checkpoint (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kVersion) {
    fail(r.path(), "unsupported checkpoint version " + std::to_string(version));
  }
  CheckpointData d;
  auto& c = d.config;
  c.latent_dim = r.i32();
  c.channels = r.i32();
  c.height = r.i32();
  c.width = r.i32();
  c.base_channels = r.i32();
  c.pose_hidden = r.i32();
  c.decoder_variance = r.f64();
  c.learning_rate = r.f64();
  c.epochs = r.i32();
  c.batch_size = r.i32();
  c.seed = r.u64();
  c.grad_clip = r.f64();
  c.threads = r.i32();
  for (double& v : d.stats.center) v = r.f64();
  for (double& v : d.stats.half_extent) v = r.f64();
  return d;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& file, const model::ModelConfig& config,
                     const geom::NormStats& stats, const nn::ParamStore& params) {
  Writer w(file);
  write_header(w, config, stats);
  w.u32(static_cast<std::uint32_t>(params.count()));
  std::vector<unsigned char> payload;
  for (int id = 0; id < params.count(); ++id) {
    const nn::Param& p = params.at(id);
    if (p.name.size() > 0xffff) fail(file, "parameter name too long: " + p.name);
    w.u16(static_cast<std::uint16_t>(p.name.size()));
    w.bytes(p.name.data(), p.name.size());
    w.u8(static_cast<std::uint8_t>(p.shape.size()));
    for (int d : p.shape) w.i32(d);
    payload.resize(p.value.size() * 8);
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const std::uint64_t bits = std::bit_cast<std::uint64_t>(p.value[i]);
      for (int b = 0; b < 8; ++b) payload[i * 8 + b] = static_cast<unsigned char>(bits >> (8 * b));
    }
    w.bytes(payload.data(), payload.size());
    w.u64(fnv1a(payload.data(), payload.size()));
  }
  w.finish();
}

CheckpointData read_checkpoint_header(const std::filesystem::path& file) {
  Reader r(file);
  return read_header(r);
}

CheckpointData load_checkpoint_into(const std::filesystem::path& file, nn::ParamStore& params) {
  Reader r(file);
  CheckpointData d = read_header(r);

  const std::uint32_t count = r.u32();
  if (static_cast<int>(count) != params.count()) {
    fail(file, "checkpoint holds " + std::to_string(count) + " tensors, model expects " +
                   std::to_string(params.count()));
  }
  std::set<int> seen;
  std::vector<unsigned char> payload;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint16_t name_len = r.u16();
    std::string name(name_len, '\0');
    r.bytes(name.data(), name_len);
    const int id = params.find(name);
    if (id < 0) fail(file, "unknown parameter name '" + name + "'");
    if (!seen.insert(id).second) fail(file, "duplicate parameter '" + name + "'");
    nn::Param& p = params.at(id);

    const std::uint8_t rank = r.u8();
    nn::Shape shape(rank);
    for (auto& dim : shape) dim = r.i32();
    if (shape != p.shape) {
      fail(file, "parameter '" + name + "' has shape " + nn::shape_str(shape) +
                     ", model expects " + nn::shape_str(p.shape));
    }

    payload.resize(p.value.size() * 8);
    r.bytes(payload.data(), payload.size());
    const std::uint64_t stored = r.u64();
    if (stored != fnv1a(payload.data(), payload.size())) {
      fail(file, "checksum mismatch in parameter '" + name + "' (corrupted checkpoint)");
    }
    for (std::size_t k = 0; k < p.value.size(); ++k) {
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= std::uint64_t(payload[k * 8 + b]) << (8 * b);
      p.value[k] = std::bit_cast<double>(bits);
    }
  }
  return d;
}

}  // namespace gmap::io
