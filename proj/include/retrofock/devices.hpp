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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "retrofock/fock.hpp"

namespace retrofock::devices {

using fock::FockVector;
using fock::ModeRegister;
using fock::OperatorMatrix;

/// One failed device invariant; validation reports them all instead of
/// throwing.
struct Violation {
  std::string element_id;  // empty for device-level checks
  std::string what;
  double value = 0.0;
  double bound = 0.0;
};

/// A measurement device: one non-negative definite element per outcome,
/// elements summing to the identity.
struct MeasurementDevice {
  ModeRegister reg;
  std::vector<std::pair<std::string, OperatorMatrix>> elements;

  void add(std::string outcome_id, OperatorMatrix element);
  bool has(const std::string& outcome_id) const;
  const OperatorMatrix& element(const std::string& outcome_id) const;
  std::vector<std::string> outcome_ids() const;
};

/// A preparation device: one non-negative definite operator per outcome,
/// traces summing to one. Tr of an element is that outcome's a priori
/// probability.
struct PreparationDevice {
  ModeRegister reg;
  std::vector<std::pair<std::string, OperatorMatrix>> elements;

  void add(std::string outcome_id, OperatorMatrix element);
  bool has(const std::string& outcome_id) const;
  const OperatorMatrix& element(const std::string& outcome_id) const;
  std::vector<std::string> outcome_ids() const;
};

std::vector<Violation> validate(const MeasurementDevice& d);
std::vector<Violation> validate(const PreparationDevice& d);

double prior_probability(const PreparationDevice& d,
                         const std::string& outcome_id);

/// weight * |state><state| for a normalized pure state, weight in (0, 1].
OperatorMatrix pure_preparation(const FockVector& state, double weight);

/// Absorb a unitary that acts right after the preparation: every element
/// maps to U element U^dagger. Preserves all device invariants.
PreparationDevice combine_with_unitary(const PreparationDevice& d,
                                       const OperatorMatrix& u);

/// Absorb a unitary that acts right before the measurement: every element
/// maps to U^dagger element U.
MeasurementDevice combine_with_unitary(const MeasurementDevice& d,
                                       const OperatorMatrix& u);

/// Photon-counting POM over the listed (mode, detector name) pairs:
/// one projector per joint count pattern, outcome ids like "D0=0,D1=1"
/// in the order given. With `max_count` set, patterns whose counts all
/// stay within the cap keep their own element and everything else is
/// merged into a single "overflow" element so completeness holds exactly
/// on the truncated space.
MeasurementDevice photon_counting_pom(
    const ModeRegister& reg,
    const std::vector<std::pair<std::string, std::string>>& counters,
    std::optional<int> max_count = std::nullopt);

/// Device with one outcome that prepares the given normalized pure state.
PreparationDevice single_outcome_preparation(const std::string& outcome_id,
                                             const FockVector& state);

}  // namespace retrofock::devices
