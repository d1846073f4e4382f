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
#include <random>
#include <vector>

#include "retrofock/devices.hpp"
#include "retrofock/fock.hpp"
#include "retrofock/kernels.hpp"
#include "retrofock/linalg.hpp"

namespace retrofock::testing {

using cplx = std::complex<double>;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64{seed}; }

inline cplx random_cplx(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = random_cplx(rng);
  return v;
}

inline std::vector<cplx> random_unit_vector(std::mt19937_64& rng,
                                            std::size_t n) {
  std::vector<cplx> v = random_vector(rng, n);
  double norm = std::sqrt(kernels::norm_sq(v));
  kernels::scale(cplx{1.0 / norm, 0.0}, v);
  return v;
}

// Haar-ish random unitary: Ginibre matrix + modified Gram-Schmidt.
inline std::vector<cplx> random_unitary(std::mt19937_64& rng, std::size_t d) {
  std::vector<std::vector<cplx>> cols(d);
  for (auto& c : cols) c = random_vector(rng, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx overlap = kernels::dotc(cols[k], cols[j]);
      kernels::axpy(-overlap, cols[k], cols[j]);
    }
    double norm = std::sqrt(kernels::norm_sq(cols[j]));
    kernels::scale(cplx{1.0 / norm, 0.0}, cols[j]);
  }
  std::vector<cplx> u(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u[i * d + j] = cols[j][i];
  return u;
}

// Random positive semidefinite matrix G^dagger G, normalized to unit trace.
inline std::vector<cplx> random_density(std::mt19937_64& rng, std::size_t d) {
  std::vector<cplx> g = random_vector(rng, d * d);
  std::vector<cplx> rho(d * d);
  kernels::gemm_adj_left(g, g, rho, d, d, d);
  double tr = linalg::trace(rho, d).real();
  kernels::scale(cplx{1.0 / tr, 0.0}, rho);
  return rho;
}

// Random valid preparation device: k mixed operators with random weights
// summing to one.
inline devices::PreparationDevice random_pdo(std::mt19937_64& rng,
                                             const fock::ModeRegister& reg,
                                             std::size_t k) {
  std::size_t d = reg.dim();
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) {
    x = u(rng);
    total += x;
  }
  devices::PreparationDevice dev;
  dev.reg = reg;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<cplx> m = random_density(rng, d);
    kernels::scale(cplx{w[i] / total, 0.0}, m);
    dev.add("p" + std::to_string(i), fock::OperatorMatrix(reg, std::move(m)));
  }
  return dev;
}

// Random valid POM: positive operators A_j whitened by the inverse square
// root of their sum so completeness holds exactly.
inline devices::MeasurementDevice random_pom(std::mt19937_64& rng,
                                             const fock::ModeRegister& reg,
                                             std::size_t k) {
  std::size_t d = reg.dim();
  std::vector<std::vector<cplx>> parts(k);
  std::vector<cplx> sum(d * d, cplx{0.0, 0.0});
  for (auto& a : parts) {
    std::vector<cplx> g = random_vector(rng, d * d);
    a.resize(d * d);
    kernels::gemm_adj_left(g, g, a, d, d, d);
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] += a[i];
  }
  linalg::EigResult eig = linalg::hermitian_eigensystem(sum, d);
  // sum^{-1/2} = V diag(lambda^{-1/2}) V^dagger
  std::vector<cplx> inv_sqrt(d * d, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t e = 0; e < d; ++e)
        acc += eig.vectors[i * d + e] *
               std::conj(eig.vectors[j * d + e]) /
               std::sqrt(eig.values[e]);
      inv_sqrt[i * d + j] = acc;
    }
  devices::MeasurementDevice dev;
  dev.reg = reg;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<cplx> tmp(d * d), el(d * d);
    kernels::gemm(inv_sqrt, parts[j], tmp, d, d, d);
    kernels::gemm(tmp, inv_sqrt, el, d, d, d);
    dev.add("m" + std::to_string(j), fock::OperatorMatrix(reg, std::move(el)));
  }
  return dev;
}

/// Single-mode register of the given dimension (occupations 0..dim-1).
inline fock::ModeRegister register_of_dim(std::size_t dim) {
  return fock::ModeRegister({"x"}, static_cast<int>(dim) - 1);
}

}  // namespace retrofock::testing
