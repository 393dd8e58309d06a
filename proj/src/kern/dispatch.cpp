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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gmap/kern/kernels.hpp"

namespace gmap::kern {

bool avx2_compiled_in();  // defined in kernels_avx2.cpp

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* resolve_auto() {
  return avx2_available() ? &avx2_ops() : &scalar_ops();
}

const Ops* resolve_from_env() {
  if (const char* env = std::getenv("GMAP_KERNELS")) {
    std::string_view v(env);
    if (v == "scalar") return &scalar_ops();
    if (v == "avx2") {
      if (!avx2_available()) {
        throw std::runtime_error("GMAP_KERNELS=avx2 but AVX2+FMA is not available on this CPU");
      }
      return &avx2_ops();
    }
    // anything else (including "auto") falls through to detection
  }
  return resolve_auto();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

bool avx2_available() {
  static const bool ok = avx2_compiled_in() && cpu_has_avx2_fma();
  return ok;
}

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = resolve_from_env();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

std::string_view active_name() { return active().name; }

void force(std::string_view name) {
  if (name == "scalar") {
    g_active.store(&scalar_ops(), std::memory_order_release);
  } else if (name == "avx2") {
    if (!avx2_available()) {
      throw std::runtime_error("AVX2 kernels requested but not available");
    }
    g_active.store(&avx2_ops(), std::memory_order_release);
  } else if (name == "auto") {
    g_active.store(resolve_auto(), std::memory_order_release);
  } else {
    throw std::invalid_argument("unknown kernel variant: " + std::string(name));
  }
}

}  // namespace gmap::kern
