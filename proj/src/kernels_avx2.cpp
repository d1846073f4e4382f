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

// AVX2+FMA variants of the vector cores. This translation unit is the only
// one compiled with -mavx2; everything else stays at the base ISA so the
// binary still runs on hosts without AVX2 (the scalar table is used there).

#include "retrofock/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace retrofock::kernels {

namespace {

// Two packed complex doubles per 256-bit register: [re0, im0, re1, im1].

inline __m256d cmul(__m256d a, __m256d b) {
  __m256d are = _mm256_movedup_pd(a);        // [re0, re0, re1, re1]
  __m256d aim = _mm256_permute_pd(a, 0xF);   // [im0, im0, im1, im1]
  __m256d bsw = _mm256_permute_pd(b, 0x5);   // [im0, re0, im1, re1]
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

// conj(a) * b
inline __m256d cmul_conj(__m256d a, __m256d b) {
  __m256d are = _mm256_movedup_pd(a);
  __m256d aim = _mm256_permute_pd(a, 0xF);
  __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmsubadd_pd(are, b, _mm256_mul_pd(aim, bsw));
}

inline cplx reduce_c128(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

inline __m256d broadcast_c(cplx a) {
  return _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
}

cplx avx2_dotu(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    __m256d vy = _mm256_loadu_pd(yd + 2 * k);
    acc = _mm256_add_pd(acc, cmul(vx, vy));
  }
  cplx s = reduce_c128(acc);
  for (; k < n; ++k) s += x[k] * y[k];
  return s;
}

cplx avx2_dotc(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    __m256d vy = _mm256_loadu_pd(yd + 2 * k);
    acc = _mm256_add_pd(acc, cmul_conj(vx, vy));
  }
  cplx s = reduce_c128(acc);
  for (; k < n; ++k) s += std::conj(x[k]) * y[k];
  return s;
}

double avx2_norm_sq(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    acc = _mm256_fmadd_pd(vx, vx, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s2 = _mm_add_pd(lo, hi);
  __m128d s1 = _mm_hadd_pd(s2, s2);
  double s = _mm_cvtsd_f64(s1);
  for (; k < n; ++k) s += std::norm(x[k]);
  return s;
}

void avx2_scale(cplx a, cplx* x, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  __m256d va = broadcast_c(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    _mm256_storeu_pd(xd + 2 * k, cmul(va, _mm256_loadu_pd(xd + 2 * k)));
  for (; k < n; ++k) x[k] *= a;
}

void avx2_axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  __m256d va = broadcast_c(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d vy = _mm256_loadu_pd(yd + 2 * k);
    __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(vy, cmul(va, vx)));
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

void avx2_axpy_conj(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  __m256d va = broadcast_c(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d vy = _mm256_loadu_pd(yd + 2 * k);
    __m256d vx = _mm256_xor_pd(_mm256_loadu_pd(xd + 2 * k), conj_mask);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(vy, cmul(va, vx)));
  }
  for (; k < n; ++k) y[k] += a * std::conj(x[k]);
}

constexpr KernelTable kAvx2Table = {
    avx2_dotu, avx2_dotc,      avx2_norm_sq,
    avx2_scale, avx2_axpy,     avx2_axpy_conj,
};

}  // namespace

const KernelTable* avx2_kernel_table() {
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &kAvx2Table : nullptr;
}

}  // namespace retrofock::kernels

#else  // no AVX2 in this build

namespace retrofock::kernels {
const KernelTable* avx2_kernel_table() { return nullptr; }
}  // namespace retrofock::kernels

#endif
