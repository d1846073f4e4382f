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

#include <cstddef>
#include <span>
#include <vector>

#include "retrofock/kernels.hpp"

namespace retrofock::linalg {

using kernels::cplx;

std::vector<cplx> identity(std::size_t dim);

/// out = in^dagger for a rows x cols row-major matrix (out is cols x rows).
void adjoint(std::span<const cplx> in, std::size_t rows, std::size_t cols,
             std::span<cplx> out);

cplx trace(std::span<const cplx> a, std::size_t dim);

/// Tr(A B) for square row-major matrices.
cplx trace_product(std::span<const cplx> a, std::span<const cplx> b,
                   std::size_t dim);

/// Tr(A B) when both A and B are Hermitian; reduces to a single conjugated
/// dot product over the flattened matrices and is real up to roundoff.
double trace_product_hermitian(std::span<const cplx> a,
                               std::span<const cplx> b, std::size_t dim);

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

bool is_hermitian(std::span<const cplx> a, std::size_t dim, double tol);

/// max |(A^dagger A - I)_{ij}| <= tol
bool is_unitary(std::span<const cplx> a, std::size_t dim, double tol);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Exact enough for the small dimensions this project uses
/// (reconstruction error ~1e-14 at dim 100). The input is symmetrized as
/// (A + A^dagger)/2 before iterating.
struct EigResult {
  std::vector<double> values;  // ascending
  std::vector<cplx> vectors;   // row-major; column j pairs with values[j]
  std::size_t dim = 0;
};

EigResult hermitian_eigensystem(std::span<const cplx> a, std::size_t dim,
                                bool want_vectors = true);

std::vector<double> hermitian_eigenvalues(std::span<const cplx> a,
                                          std::size_t dim);

double min_hermitian_eigenvalue(std::span<const cplx> a, std::size_t dim);

/// (1/2) sum_i |lambda_i(A - B)| for Hermitian A, B.
double trace_distance(std::span<const cplx> a, std::span<const cplx> b,
                      std::size_t dim);

}  // namespace retrofock::linalg
