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

#include "retrofock/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace retrofock::linalg {

std::vector<cplx> identity(std::size_t dim) {
  std::vector<cplx> m(dim * dim, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = cplx{1.0, 0.0};
  return m;
}

void adjoint(std::span<const cplx> in, std::size_t rows, std::size_t cols,
             std::span<cplx> out) {
  assert(in.size() == rows * cols && out.size() == rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out[j * rows + i] = std::conj(in[i * cols + j]);
}

cplx trace(std::span<const cplx> a, std::size_t dim) {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim; ++i) t += a[i * dim + i];
  return t;
}

cplx trace_product(std::span<const cplx> a, std::span<const cplx> b,
                   std::size_t dim) {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      t += a[i * dim + j] * b[j * dim + i];
  return t;
}

double trace_product_hermitian(std::span<const cplx> a,
                               std::span<const cplx> b, std::size_t dim) {
  // Tr(AB) = sum_ij A_ij B_ji = sum_ij conj(B_ij) A_ij when B = B^dagger.
  (void)dim;
  return kernels::dotc(b, a).real();
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

bool is_hermitian(std::span<const cplx> a, std::size_t dim, double tol) {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      if (std::abs(a[i * dim + j] - std::conj(a[j * dim + i])) > tol)
        return false;
  return true;
}

bool is_unitary(std::span<const cplx> a, std::size_t dim, double tol) {
  std::vector<cplx> prod(dim * dim);
  kernels::gemm_adj_left(a, a, prod, dim, dim, dim);
  std::vector<cplx> id = identity(dim);
  return max_abs_diff(prod, id) <= tol;
}

EigResult hermitian_eigensystem(std::span<const cplx> input, std::size_t dim,
                                bool want_vectors) {
  assert(input.size() == dim * dim);
  EigResult res;
  res.dim = dim;
  if (dim == 0) return res;

  // Work on the Hermitian part; off-Hermitian noise in the input would
  // otherwise stall convergence.
  std::vector<cplx> a(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      a[i * dim + j] =
          0.5 * (input[i * dim + j] + std::conj(input[j * dim + i]));

  std::vector<cplx> v;
  if (want_vectors) v = identity(dim);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) s += std::norm(a[i * dim + j]);
    return std::sqrt(2.0 * s);
  };

  const double scale =
      std::max(1.0, std::sqrt(kernels::norm_sq(std::span<const cplx>(a))));
  const double stop = 1e-15 * scale;
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        cplx apq = a[p * dim + q];
        double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        double app = a[p * dim + p].real();
        double aqq = a[q * dim + q].real();
        cplx phase = apq / mag;  // e^{i arg(apq)}

        double tau = (aqq - app) / (2.0 * mag);
        double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;

        // Rotation G: G[p][p]=c, G[p][q]=s*phase, G[q][p]=-s*conj(phase),
        // G[q][q]=c. Update A <- G^dagger A G and V <- V G.
        cplx gpq = s * phase;
        cplx gqp = -s * std::conj(phase);

        for (std::size_t r = 0; r < dim; ++r) {  // columns: A <- A G
          cplx arp = a[r * dim + p];
          cplx arq = a[r * dim + q];
          a[r * dim + p] = c * arp + gqp * arq;
          a[r * dim + q] = gpq * arp + c * arq;
        }
        for (std::size_t col = 0; col < dim; ++col) {  // rows: A <- G^dagger A
          cplx apc = a[p * dim + col];
          cplx aqc = a[q * dim + col];
          a[p * dim + col] = c * apc + std::conj(gqp) * aqc;
          a[q * dim + col] = std::conj(gpq) * apc + c * aqc;
        }
        if (want_vectors) {
          for (std::size_t r = 0; r < dim; ++r) {
            cplx vrp = v[r * dim + p];
            cplx vrq = v[r * dim + q];
            v[r * dim + p] = c * vrp + gqp * vrq;
            v[r * dim + q] = gpq * vrp + c * vrq;
          }
        }
      }
    }
  }

  res.values.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) res.values[i] = a[i * dim + i].real();

  // Sort ascending, permuting eigenvector columns along.
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) {
              return res.values[x] < res.values[y];
            });
  std::vector<double> sorted(dim);
  for (std::size_t i = 0; i < dim; ++i) sorted[i] = res.values[order[i]];
  res.values = std::move(sorted);
  if (want_vectors) {
    res.vectors.assign(dim * dim, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t r = 0; r < dim; ++r)
        res.vectors[r * dim + j] = v[r * dim + order[j]];
  }
  return res;
}

std::vector<double> hermitian_eigenvalues(std::span<const cplx> a,
                                          std::size_t dim) {
  return hermitian_eigensystem(a, dim, false).values;
}

double min_hermitian_eigenvalue(std::span<const cplx> a, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("empty matrix");
  return hermitian_eigenvalues(a, dim).front();
}

double trace_distance(std::span<const cplx> a, std::span<const cplx> b,
                      std::size_t dim) {
  assert(a.size() == dim * dim && b.size() == dim * dim);
  std::vector<cplx> diff(dim * dim);
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = a[k] - b[k];
  std::vector<double> ev = hermitian_eigenvalues(diff, dim);
  double s = 0.0;
  for (double l : ev) s += std::abs(l);
  return 0.5 * s;
}

}  // namespace retrofock::linalg
