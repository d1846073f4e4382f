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

#include <map>
#include <string>

#include "retrofock/devices.hpp"
#include "retrofock/fock.hpp"

namespace retrofock::formalisms {

using fock::DensityOperator;
using fock::Direction;
using fock::FockVector;
using fock::OperatorMatrix;
using fock::Projection;

/// Preparation at one end, measurement at the other, one unitary between.
struct ExperimentSetup {
  devices::PreparationDevice preparation;
  OperatorMatrix evolution;
  devices::MeasurementDevice measurement;
};

/// Consistency checks (shared register, unitary evolution). Throws on the
/// first failure; cheap enough to call when assembling random setups.
void check_setup(const ExperimentSetup& setup);

/// State assigned forward from a known preparation outcome: the
/// normalized preparation operator for that outcome.
DensityOperator predictive_state(const ExperimentSetup& setup,
                                 const std::string& i);

/// P(j|i): evolve the predictive state forward and trace against the
/// measurement element for j.
double forward_probability(const ExperimentSetup& setup, const std::string& i,
                           const std::string& j);

/// P(i|j) from the predictive engine plus Bayes' theorem.
std::map<std::string, double> bayes_retrodict(const ExperimentSetup& setup,
                                              const std::string& j);

/// State assigned backward from a known measurement outcome: the
/// normalized measurement element for that outcome.
DensityOperator retrodictive_state(const ExperimentSetup& setup,
                                   const std::string& j);

/// P(i|j) computed directly in the retrodictive formalism: evolve the
/// retrodictive state backward and trace against each preparation
/// operator. Independent of bayes_retrodict; the two must agree.
std::map<std::string, double> retrodictive_probability(
    const ExperimentSetup& setup, const std::string& j);

/// Measurement collapse of an entangled predictive state: contract the
/// observed outcome state out of the joint and renormalize what is left,
/// which keeps propagating forward. A degenerate projection marks the
/// outcome impossible.
Projection collapse_at_measurement(const FockVector& entangled,
                                   const FockVector& outcome_state);

/// Preparation collapse of a retrodictive state. One argument's register
/// must be contained in the other's; the contained state acts as the bra.
/// The caller says whether the remainder keeps evolving backward or is
/// re-emitted forward, since both continuations occur.
Projection collapse_at_preparation(const FockVector& entangled_retro,
                                   const FockVector& prepared_state,
                                   Direction result_direction);

}  // namespace retrofock::formalisms
