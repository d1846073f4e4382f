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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "retrofock/fock.hpp"

namespace retrofock::scenarios {

using fock::cplx;
using fock::DensityOperator;
using fock::FockVector;

/// The double-beam-splitter arrangement: a lower splitter fed vacuum and
/// a single photon, an upper splitter fed the lower's through mode plus a
/// chosen superposition a0|0> + a1|1>, photon counters D0 and D1 on the
/// upper splitter's outputs. Conditioned on the counts, a definite state
/// is retrodicted into the lower splitter's free output at the earlier
/// time.
struct TimeMachineConfig {
  cplx a0{1.0, 0.0};
  cplx a1{0.0, 0.0};
  /// Fractional part of the shared-path length in wavelengths; zero keeps
  /// the two splitters an integer number of wavelengths apart.
  double path_b_wavelength_fraction = 0.0;
};

/// Mach-Zehnder feedback cycle: the retrodicted output is routed through
/// a phase shifter (the adjustable "rejuvenator") back to the upper
/// splitter's free input. The amplitude split is fixed at 1/2 each.
struct ClosedCycleConfig {
  double phi = 0.0;
};

struct OutcomeRecord {
  int d0 = 0;  // photons at D0
  int d1 = 0;  // photons at D1
  std::string outcome_id;  // "D0=<d0>,D1=<d1>"
  double probability = 0.0;
  /// Retrodicted single-mode output state, phase-gauged so the first
  /// nonzero amplitude is real positive. Absent for probability-zero
  /// outcomes.
  std::optional<FockVector> retro_out;
};

struct BackwardChannelReport {
  std::vector<OutcomeRecord> outcomes;
  /// Sum of |out><out| weighted by outcome probability: what is actually
  /// sent back when the detector outcomes are unknown.
  DensityOperator averaged_state;
};

enum class Verdict { Consistent, Inconsistent, Partial };

std::string_view verdict_name(Verdict v);

struct CycleOutcome {
  int d0 = 0;
  int d1 = 0;
  std::string outcome_id;
  cplx overlap{0.0, 0.0};          // <in|in_bar>
  double cycle_probability = 0.0;  // |<in|in_bar>|^2
  double oracle_probability = 0.0; // forward interferometer ground truth
  Verdict verdict = Verdict::Partial;
};

struct CycleReport {
  double phi = 0.0;
  std::vector<CycleOutcome> outcomes;  // (D0=0,D1=1) then (D0=1,D1=0)
};

struct NoSignalingReport {
  std::size_t num_configs = 0;
  double max_pairwise_trace_distance = 0.0;
  double max_oracle_trace_distance = 0.0;
  bool pass = false;
  DensityOperator oracle_state;  // reduced lower-splitter output
};

/// Analyze every detector outcome of the double-beam-splitter
/// arrangement: predictive probability plus the retrodictively collapsed
/// output state.
BackwardChannelReport backward_channel(const TimeMachineConfig& config);

/// Checks that the averaged sent-back state is independent of the chosen
/// (a0, a1) and equals the reduced lower-splitter output.
NoSignalingReport no_signaling_check(std::span<const TimeMachineConfig> configs);

/// Run the feedback cycle at the given rejuvenator phase: for each of the
/// two possible one-photon outcomes, the evolved-around-the-loop state,
/// its overlap with the required input, and the forward-oracle
/// probability for the same outcome.
CycleReport cycle_analysis(const ClosedCycleConfig& config);

/// Total amplitude for a D1 detection summed over the two photon paths,
/// built from the four elementary reflection/transmission amplitudes.
cplx path_amplitude_oracle(double phi);

/// Brute-force predictive simulation of the equivalent Mach-Zehnder
/// interferometer; returns probabilities for "D0=0,D1=1" and "D0=1,D1=0".
std::map<std::string, double> forward_interferometer_oracle(double phi);

}  // namespace retrofock::scenarios
