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

#include "retrofock/formalisms.hpp"

#include <algorithm>
#include <stdexcept>

#include "retrofock/kernels.hpp"
#include "retrofock/linalg.hpp"

namespace retrofock::formalisms {

using fock::cplx;
using fock::kDegenerateNormSq;
using fock::kLinalgTol;

void check_setup(const ExperimentSetup& setup) {
  if (setup.preparation.reg != setup.evolution.reg ||
      setup.measurement.reg != setup.evolution.reg)
    throw std::invalid_argument("setup devices live on different registers");
  if (!setup.evolution.is_unitary(1e-10))
    throw std::invalid_argument("setup evolution is not unitary");
}

DensityOperator predictive_state(const ExperimentSetup& setup,
                                 const std::string& i) {
  const OperatorMatrix& lambda = setup.preparation.element(i);
  double tr = lambda.trace().real();
  if (tr < kDegenerateNormSq)
    throw std::domain_error("zero-probability preparation outcome: " + i);
  DensityOperator rho(lambda.reg, lambda.m);
  kernels::scale(cplx{1.0 / tr, 0.0}, rho.m);
  return rho;
}

DensityOperator retrodictive_state(const ExperimentSetup& setup,
                                   const std::string& j) {
  const OperatorMatrix& pi = setup.measurement.element(j);
  double tr = pi.trace().real();
  if (tr < kDegenerateNormSq)
    throw std::domain_error("zero-trace measurement element: " + j);
  DensityOperator rho(pi.reg, pi.m);
  kernels::scale(cplx{1.0 / tr, 0.0}, rho.m);
  return rho;
}

double forward_probability(const ExperimentSetup& setup, const std::string& i,
                           const std::string& j) {
  DensityOperator rho = predictive_state(setup, i);
  std::size_t d = rho.dim();
  // U rho U^dagger, then trace against the measurement element.
  std::vector<cplx> tmp(d * d), evolved(d * d);
  kernels::gemm(setup.evolution.m, rho.m, tmp, d, d, d);
  kernels::gemm_adj_right(tmp, setup.evolution.m, evolved, d, d, d);
  const OperatorMatrix& pi = setup.measurement.element(j);
  return linalg::trace_product_hermitian(evolved, pi.m, d);
}

std::map<std::string, double> bayes_retrodict(const ExperimentSetup& setup,
                                              const std::string& j) {
  std::map<std::string, double> joint;
  double denom = 0.0;
  for (const auto& [i, lambda] : setup.preparation.elements) {
    double prior = lambda.trace().real();
    double term =
        prior < kDegenerateNormSq ? 0.0 : forward_probability(setup, i, j) * prior;
    joint[i] = term;
    denom += term;
  }
  if (denom < kDegenerateNormSq)
    throw std::domain_error("measurement outcome has probability zero: " + j);
  for (auto& [i, p] : joint) p /= denom;
  return joint;
}

std::map<std::string, double> retrodictive_probability(
    const ExperimentSetup& setup, const std::string& j) {
  DensityOperator retro = retrodictive_state(setup, j);
  std::size_t d = retro.dim();
  // U^dagger rho U: the retrodictive state at the preparation time.
  std::vector<cplx> tmp(d * d), back(d * d);
  kernels::gemm_adj_left(setup.evolution.m, retro.m, tmp, d, d, d);
  kernels::gemm(tmp, setup.evolution.m, back, d, d, d);

  std::map<std::string, double> probs;
  double denom = 0.0;
  for (const auto& [i, lambda] : setup.preparation.elements) {
    double term = linalg::trace_product_hermitian(back, lambda.m, d);
    term = std::max(term, 0.0);
    probs[i] = term;
    denom += term;
  }
  if (denom < kDegenerateNormSq)
    throw std::domain_error("measurement outcome has probability zero: " + j);
  for (auto& [i, p] : probs) p /= denom;
  return probs;
}

Projection collapse_at_measurement(const FockVector& entangled,
                                   const FockVector& outcome_state) {
  if (entangled.direction != Direction::Predictive)
    throw std::invalid_argument(
        "collapse_at_measurement acts on a predictive state");
  return fock::project_and_renormalize(outcome_state, entangled);
}

namespace {

bool is_sublist(const std::vector<std::string>& small,
                const std::vector<std::string>& big) {
  std::size_t cursor = 0;
  for (const auto& l : small) {
    while (cursor < big.size() && big[cursor] != l) ++cursor;
    if (cursor == big.size()) return false;
    ++cursor;
  }
  return true;
}

}  // namespace

Projection collapse_at_preparation(const FockVector& entangled_retro,
                                   const FockVector& prepared_state,
                                   Direction result_direction) {
  if (entangled_retro.direction != Direction::Retrodictive)
    throw std::invalid_argument(
        "collapse_at_preparation acts on a retrodictive state");

  const auto& retro_labels = entangled_retro.reg.labels();
  const auto& prep_labels = prepared_state.reg.labels();

  Projection p;
  if (is_sublist(prep_labels, retro_labels)) {
    // Known preparation on part of the retrodictive state: project it out,
    // the remainder keeps the direction the caller asks for.
    p = fock::project_and_renormalize(prepared_state, entangled_retro);
  } else if (is_sublist(retro_labels, prep_labels)) {
    // The retrodictive state covers part of a larger prepared state: it
    // acts as the bra and selects the remainder of the preparation.
    p = fock::project_and_renormalize(entangled_retro, prepared_state);
  } else {
    throw std::invalid_argument(
        "collapse_at_preparation: neither register contains the other");
  }
  if (p.state) p.state = p.state->with_direction(result_direction);
  return p;
}

}  // namespace retrofock::formalisms
