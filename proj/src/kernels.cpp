// Copyright 2026 The Retrofock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "retrofock/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <cstring>

namespace retrofock::kernels {

namespace {

// ---- scalar reference implementations ------------------------------------

cplx scalar_dotu(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) acc += x[k] * y[k];
  return acc;
}

cplx scalar_dotc(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

double scalar_norm_sq(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += std::norm(x[k]);
  return acc;
}

void scalar_scale(cplx a, cplx* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) x[k] *= a;
}

void scalar_axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void scalar_axpy_conj(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * std::conj(x[k]);
}

constexpr KernelTable kScalarTable = {
    scalar_dotu, scalar_dotc,      scalar_norm_sq,
    scalar_scale, scalar_axpy,     scalar_axpy_conj,
};

// ---- dispatch --------------------------------------------------------------

struct Dispatch {
  const KernelTable* table;
  Backend backend;
};

Dispatch pick_initial() {
  const char* env = std::getenv("RETROFOCK_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return {&kScalarTable, Backend::Scalar};
    if (std::strcmp(env, "avx2") == 0 && avx2_kernel_table() != nullptr)
      return {avx2_kernel_table(), Backend::Avx2};
    // Unknown or unsupported value: fall through to auto-detection.
  }
  if (const KernelTable* t = avx2_kernel_table()) return {t, Backend::Avx2};
  return {&kScalarTable, Backend::Scalar};
}

std::atomic<const KernelTable*>& table_slot() {
  static std::atomic<const KernelTable*> slot{nullptr};
  return slot;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{Backend::Scalar};
  return slot;
}

const KernelTable& active_table() {
  const KernelTable* t = table_slot().load(std::memory_order_acquire);
  if (t == nullptr) {
    Dispatch d = pick_initial();
    backend_slot().store(d.backend, std::memory_order_relaxed);
    table_slot().store(d.table, std::memory_order_release);
    t = d.table;
  }
  return *t;
}

}  // namespace

const KernelTable* scalar_kernel_table() { return &kScalarTable; }

Backend active_backend() {
  active_table();
  return backend_slot().load(std::memory_order_relaxed);
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return avx2_kernel_table() != nullptr;
  }
  return false;
}

bool set_backend(Backend b) {
  const KernelTable* t = nullptr;
  if (b == Backend::Scalar) t = &kScalarTable;
  if (b == Backend::Avx2) t = avx2_kernel_table();
  if (t == nullptr) return false;
  backend_slot().store(b, std::memory_order_relaxed);
  table_slot().store(t, std::memory_order_release);
  return true;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "?";
}

// ---- public entry points ----------------------------------------------------

cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
  return active_table().dotu(x.data(), y.data(), x.size());
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
  return active_table().dotc(x.data(), y.data(), x.size());
}

double norm_sq(std::span<const cplx> x) {
  return active_table().norm_sq(x.data(), x.size());
}

void scale(cplx a, std::span<cplx> x) {
  active_table().scale(a, x.data(), x.size());
}

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  active_table().axpy(a, x.data(), y.data(), x.size());
}

void axpy_conj(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  active_table().axpy_conj(a, x.data(), y.data(), x.size());
}

void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y) {
  assert(a.size() == rows * cols && x.size() == cols && y.size() == rows);
  const KernelTable& t = active_table();
  for (std::size_t i = 0; i < rows; ++i)
    y[i] = t.dotu(a.data() + i * cols, x.data(), cols);
}

void gemv_adj(std::span<const cplx> a, std::size_t rows, std::size_t cols,
              std::span<const cplx> x, std::span<cplx> y) {
  assert(a.size() == rows * cols && x.size() == rows && y.size() == cols);
  const KernelTable& t = active_table();
  std::fill(y.begin(), y.end(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < rows; ++i)
    t.axpy_conj(x[i], a.data() + i * cols, y.data(), cols);
}

void gemm(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c,
          std::size_t m, std::size_t k, std::size_t n) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  const KernelTable& t = active_table();
  std::fill(c.begin(), c.end(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p)
      t.axpy(a[i * k + p], b.data() + p * n, c.data() + i * n, n);
}

void gemm_adj_left(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> c, std::size_t m, std::size_t k,
                   std::size_t n) {
  assert(a.size() == k * m && b.size() == k * n && c.size() == m * n);
  const KernelTable& t = active_table();
  std::fill(c.begin(), c.end(), cplx{0.0, 0.0});
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t i = 0; i < m; ++i)
      t.axpy(std::conj(a[p * m + i]), b.data() + p * n, c.data() + i * n, n);
}

void gemm_adj_right(std::span<const cplx> a, std::span<const cplx> b,
                    std::span<cplx> c, std::size_t m, std::size_t k,
                    std::size_t n) {
  assert(a.size() == m * k && b.size() == n * k && c.size() == m * n);
  const KernelTable& t = active_table();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] = t.dotc(b.data() + j * k, a.data() + i * k, k);
}

}  // namespace retrofock::kernels
