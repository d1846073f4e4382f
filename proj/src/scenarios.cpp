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

#include "retrofock/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "retrofock/devices.hpp"
#include "retrofock/formalisms.hpp"
#include "retrofock/linalg.hpp"
#include "retrofock/optics.hpp"

namespace retrofock::scenarios {

using fock::Direction;
using fock::kDegenerateNormSq;
using fock::kPhysicsTol;
using fock::ModeRegister;
using fock::OperatorMatrix;
using fock::Projection;
using optics::OpticalElement;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// All six count patterns D0+D1 <= 2 that exist on the truncated space.
constexpr int kOutcomes[6][2] = {{0, 0}, {0, 1}, {1, 0},
                                 {1, 1}, {0, 2}, {2, 0}};

std::string outcome_id(int d0, int d1) {
  return "D0=" + std::to_string(d0) + ",D1=" + std::to_string(d1);
}

void check_config(const TimeMachineConfig& c) {
  double n = std::norm(c.a0) + std::norm(c.a1);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument(
        "time machine amplitudes are not normalized: |a0|^2+|a1|^2 = " +
        std::to_string(n));
}

// Shared geometry of the double-beam-splitter arrangement on modes
// a (free input of the upper splitter), b (shared path), c (free output
// of the lower splitter).
struct Arrangement {
  ModeRegister reg_abc{{"a", "b", "c"}};
  ModeRegister reg_ab{{"a", "b"}};
  ModeRegister reg_a{{"a"}};
  ModeRegister reg_b{{"b"}};
  ModeRegister reg_bc{{"b", "c"}};
  ModeRegister reg_c{{"c"}};

  OpticalElement bsl = OpticalElement::beam_splitter("b", "c");
  OpticalElement bsu = OpticalElement::beam_splitter("a", "b");
  OpticalElement prop_b;

  FockVector in_a;      // the chosen superposition on mode a
  FockVector bsl_out;   // entangled (b, c) state leaving the lower splitter

  OperatorMatrix bsu_ab;     // upper splitter on the (a, b) register
  OperatorMatrix prop_b_b;   // shared-path propagation on the b register

  explicit Arrangement(const TimeMachineConfig& c) {
    prop_b = OpticalElement::propagation("b", c.path_b_wavelength_fraction);

    std::vector<fock::cplx> amps(reg_a.dim(), fock::cplx{0.0, 0.0});
    amps[reg_a.index_of({0})] = c.a0;
    amps[reg_a.index_of({1})] = c.a1;
    in_a = FockVector(reg_a, std::move(amps), Direction::Predictive);

    bsl_out = optics::apply_forward(
        optics::build_element_unitary(bsl, reg_bc),
        FockVector::basis_state(reg_bc, {0, 1}, Direction::Predictive));

    bsu_ab = optics::build_element_unitary(bsu, reg_ab);
    prop_b_b = optics::build_element_unitary(prop_b, reg_b);
  }

  // Predictive engine over the full three-mode space.
  formalisms::ExperimentSetup full_setup(const TimeMachineConfig& c) const {
    std::vector<fock::cplx> amps(reg_abc.dim(), fock::cplx{0.0, 0.0});
    amps[reg_abc.index_of({0, 0, 1})] = c.a0;
    amps[reg_abc.index_of({1, 0, 1})] = c.a1;
    FockVector psi0(reg_abc, std::move(amps), Direction::Predictive);

    optics::UnitarySchedule schedule;
    schedule.add(bsl, "t_p");
    schedule.add(prop_b, "t_p..t_m");
    schedule.add(bsu, "t_m");

    formalisms::ExperimentSetup setup;
    setup.preparation = devices::single_outcome_preparation("in", psi0);
    setup.evolution = optics::compose_schedule(schedule, reg_abc);
    setup.measurement =
        devices::photon_counting_pom(reg_abc, {{"a", "D0"}, {"b", "D1"}});
    return setup;
  }

  // The retrodictive chain for one detector outcome: the combined
  // upper-splitter measurement element propagated backward, collapsed on
  // the known mode-a preparation, carried back along the shared path, and
  // collapsed on the known lower-splitter output. Absent when any step
  // is degenerate (an impossible outcome).
  std::optional<FockVector> retrodict_out(int d0, int d1) const {
    FockVector detected = FockVector::basis_state(reg_ab, {d0, d1},
                                                  Direction::Retrodictive);
    FockVector at_bsu_input = optics::apply_backward(bsu_ab, detected);

    Projection at_tm = formalisms::collapse_at_preparation(
        at_bsu_input, in_a, Direction::Retrodictive);
    if (at_tm.impossible()) return std::nullopt;

    FockVector at_tp = optics::apply_backward(prop_b_b, *at_tm.state);

    Projection out = formalisms::collapse_at_preparation(
        at_tp, bsl_out, Direction::Predictive);
    if (out.impossible()) return std::nullopt;
    return fock::canonical_phase(*out.state);
  }
};

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::Partial: return "partial";
  }
  return "?";
}

BackwardChannelReport backward_channel(const TimeMachineConfig& config) {
  check_config(config);
  Arrangement arr(config);
  formalisms::ExperimentSetup setup = arr.full_setup(config);

  BackwardChannelReport report;
  report.averaged_state = DensityOperator::zero(arr.reg_c);

  for (const auto& [d0, d1] : kOutcomes) {
    OutcomeRecord rec;
    rec.d0 = d0;
    rec.d1 = d1;
    rec.outcome_id = outcome_id(d0, d1);
    double p = formalisms::forward_probability(setup, "in", rec.outcome_id);
    if (p < kDegenerateNormSq) {
      rec.probability = 0.0;
    } else {
      rec.probability = p;
      rec.retro_out = arr.retrodict_out(d0, d1);
      if (rec.retro_out)
        report.averaged_state.accumulate_pure(p, *rec.retro_out);
    }
    report.outcomes.push_back(std::move(rec));
  }
  return report;
}

NoSignalingReport no_signaling_check(
    std::span<const TimeMachineConfig> configs) {
  NoSignalingReport report;
  report.num_configs = configs.size();

  // Oracle: the lower splitter's free output with both detectors ignored,
  // which no choice of (a0, a1) can influence.
  TimeMachineConfig base;
  Arrangement arr(base);
  report.oracle_state =
      fock::partial_trace(DensityOperator::from_pure(arr.bsl_out), {"c"});

  std::vector<DensityOperator> averaged;
  for (const TimeMachineConfig& c : configs)
    averaged.push_back(backward_channel(c).averaged_state);

  std::size_t d = report.oracle_state.dim();
  for (std::size_t i = 0; i < averaged.size(); ++i) {
    double to_oracle =
        linalg::trace_distance(averaged[i].m, report.oracle_state.m, d);
    report.max_oracle_trace_distance =
        std::max(report.max_oracle_trace_distance, to_oracle);
    for (std::size_t j = i + 1; j < averaged.size(); ++j) {
      double td = linalg::trace_distance(averaged[i].m, averaged[j].m, d);
      report.max_pairwise_trace_distance =
          std::max(report.max_pairwise_trace_distance, td);
    }
  }
  report.pass = report.max_pairwise_trace_distance <= kPhysicsTol &&
                report.max_oracle_trace_distance <= kPhysicsTol;
  return report;
}

CycleReport cycle_analysis(const ClosedCycleConfig& config) {
  // Removing the controllable preparation fixes the split at 1/2 each.
  TimeMachineConfig tm;
  tm.a0 = cplx{kInvSqrt2, 0.0};
  tm.a1 = cplx{kInvSqrt2, 0.0};
  Arrangement arr(tm);

  OperatorMatrix rejuvenator = optics::build_element_unitary(
      OpticalElement::phase_shifter("a", config.phi), arr.reg_a);
  std::map<std::string, double> oracle =
      forward_interferometer_oracle(config.phi);

  CycleReport report;
  report.phi = config.phi;

  for (const auto& [d0, d1] : {std::pair{0, 1}, std::pair{1, 0}}) {
    CycleOutcome rec;
    rec.d0 = d0;
    rec.d1 = d1;
    rec.outcome_id = outcome_id(d0, d1);

    std::optional<FockVector> out = arr.retrodict_out(d0, d1);
    if (!out) throw std::logic_error("one-photon outcome cannot be degenerate");

    // |out> reappears on the feedback path, picks up the rejuvenator
    // phase, and must come back as the state the cycle started from.
    FockVector in_bar =
        optics::apply_forward(rejuvenator, out->relabeled(arr.reg_a));
    rec.overlap = fock::inner_product(arr.in_a, in_bar);
    rec.cycle_probability = std::norm(rec.overlap);
    rec.oracle_probability = oracle.at(rec.outcome_id);

    if (rec.cycle_probability >= 1.0 - kPhysicsTol)
      rec.verdict = Verdict::Consistent;
    else if (rec.cycle_probability <= kPhysicsTol)
      rec.verdict = Verdict::Inconsistent;
    else
      rec.verdict = Verdict::Partial;

    report.outcomes.push_back(std::move(rec));
  }
  return report;
}

cplx path_amplitude_oracle(double phi) {
  // Reflection carries i, transmission is real, the rejuvenator adds
  // e^{i phi} on the transmitted path. Summed over both ways of reaching
  // D1, not read off any closed form.
  const cplx refl{0.0, kInvSqrt2};
  const cplx trans{kInvSqrt2, 0.0};
  const cplx trans_phi = std::polar(kInvSqrt2, phi);
  return refl * trans + trans_phi * refl;
}

std::map<std::string, double> forward_interferometer_oracle(double phi) {
  ModeRegister reg({"b", "c"});
  FockVector input = FockVector::basis_state(reg, {0, 1});

  optics::UnitarySchedule schedule;
  schedule.add(OpticalElement::beam_splitter("b", "c"), "t_p");
  schedule.add(OpticalElement::phase_shifter("c", phi));
  schedule.add(OpticalElement::beam_splitter("b", "c"), "t_m");

  formalisms::ExperimentSetup setup;
  setup.preparation = devices::single_outcome_preparation("in", input);
  setup.evolution = optics::compose_schedule(schedule, reg);
  setup.measurement =
      devices::photon_counting_pom(reg, {{"c", "D0"}, {"b", "D1"}});

  std::map<std::string, double> dist;
  for (const auto& [d0, d1] : {std::pair{0, 1}, std::pair{1, 0}})
    dist[outcome_id(d0, d1)] =
        formalisms::forward_probability(setup, "in", outcome_id(d0, d1));
  return dist;
}

}  // namespace retrofock::scenarios
