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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace retrofock::kernels {

using cplx = std::complex<double>;

/// Kernel backends. Scalar is the reference implementation; Avx2 is used
/// automatically when the host CPU supports AVX2+FMA. The environment
/// variable RETROFOCK_KERNELS=scalar|avx2 forces a backend at startup.
enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_supported(Backend b);

/// Switch the active backend. Returns false (and leaves the backend
/// unchanged) if `b` is not supported on this host.
bool set_backend(Backend b);

std::string_view backend_name(Backend b);

// ---- dispatched vector cores -------------------------------------------

/// sum_k x[k] * y[k]
cplx dotu(std::span<const cplx> x, std::span<const cplx> y);

/// sum_k conj(x[k]) * y[k]  (conjugate-linear in the first argument)
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);

/// sum_k |x[k]|^2
double norm_sq(std::span<const cplx> x);

/// x[k] *= a
void scale(cplx a, std::span<cplx> x);

/// y[k] += a * x[k]
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);

/// y[k] += a * conj(x[k])
void axpy_conj(cplx a, std::span<const cplx> x, std::span<cplx> y);

// ---- dense row-major matrix ops built on the cores -----------------------

/// y = A x, A is rows x cols row-major, x has cols entries, y rows entries.
void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y);

/// y = A^dagger x, A is rows x cols row-major, x has rows entries, y cols.
void gemv_adj(std::span<const cplx> a, std::size_t rows, std::size_t cols,
              std::span<const cplx> x, std::span<cplx> y);

/// C = A B with A m x k, B k x n, C m x n, all row-major. C must not alias.
void gemm(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c,
          std::size_t m, std::size_t k, std::size_t n);

/// C = A^dagger B with A k x m, B k x n, C m x n.
void gemm_adj_left(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> c, std::size_t m, std::size_t k,
                   std::size_t n);

/// C = A B^dagger with A m x k, B n x k, C m x n.
void gemm_adj_right(std::span<const cplx> a, std::span<const cplx> b,
                    std::span<cplx> c, std::size_t m, std::size_t k,
                    std::size_t n);

// ---- backend plumbing -----------------------------------------------------

/// Function table one backend fills in. Raw pointers keep the hot path
/// free of span re-validation.
struct KernelTable {
  cplx (*dotu)(const cplx*, const cplx*, std::size_t);
  cplx (*dotc)(const cplx*, const cplx*, std::size_t);
  double (*norm_sq)(const cplx*, std::size_t);
  void (*scale)(cplx, cplx*, std::size_t);
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
  void (*axpy_conj)(cplx, const cplx*, cplx*, std::size_t);
};

/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_kernel_table();
const KernelTable* scalar_kernel_table();

}  // namespace retrofock::kernels
