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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "retrofock/formalisms.hpp"
#include "retrofock/linalg.hpp"
#include "retrofock/optics.hpp"
#include "test_helpers.hpp"

using namespace retrofock;
using namespace retrofock::fock;
using namespace retrofock::formalisms;
using retrofock::testing::make_rng;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

ExperimentSetup two_level_setup() {
  ModeRegister reg({"x"}, 1);
  ExperimentSetup s;
  s.preparation.reg = reg;
  s.preparation.add(
      "p0", devices::pure_preparation(FockVector::basis_state(reg, {0}), 0.5));
  s.preparation.add(
      "p1", devices::pure_preparation(FockVector::basis_state(reg, {1}), 0.5));
  s.evolution = OperatorMatrix::identity_on(reg);
  s.measurement = devices::photon_counting_pom(reg, {{"x", "N"}});
  return s;
}

}  // namespace

TEST_CASE("predictive state of a pure outcome is its projector") {
  ModeRegister reg({"x"}, 1);
  ExperimentSetup s = two_level_setup();
  DensityOperator rho = predictive_state(s, "p1");
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(rho.at(1, 1) - cplx{1.0, 0.0}) <= 1e-14);
}

TEST_CASE("predictive state normalizes scaled projectors") {
  ModeRegister reg({"x"}, 1);
  ExperimentSetup s;
  s.preparation.reg = reg;
  s.preparation.add(
      "i", devices::pure_preparation(FockVector::basis_state(reg, {1}), 0.3));
  s.preparation.add(
      "rest",
      devices::pure_preparation(FockVector::basis_state(reg, {0}), 0.7));
  s.evolution = OperatorMatrix::identity_on(reg);
  s.measurement = devices::photon_counting_pom(reg, {{"x", "N"}});
  DensityOperator rho = predictive_state(s, "i");
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(rho.at(1, 1) - cplx{1.0, 0.0}) <= 1e-14);
}

TEST_CASE("a balanced mixed element normalizes to the maximally mixed state") {
  ModeRegister reg({"x"}, 1);
  ExperimentSetup s;
  s.preparation.reg = reg;
  OperatorMatrix lam = OperatorMatrix::identity_on(reg);
  kernels::scale(cplx{0.2, 0.0}, lam.m);  // 0.2|0><0| + 0.2|1><1|
  s.preparation.add("mixed", lam);
  OperatorMatrix rest = OperatorMatrix::identity_on(reg);
  kernels::scale(cplx{0.3, 0.0}, rest.m);
  s.preparation.add("rest", rest);
  s.evolution = OperatorMatrix::identity_on(reg);
  s.measurement = devices::photon_counting_pom(reg, {{"x", "N"}});

  DensityOperator rho = predictive_state(s, "mixed");
  CHECK(std::abs(rho.at(0, 0) - cplx{0.5, 0.0}) <= 1e-14);
  CHECK(std::abs(rho.at(1, 1) - cplx{0.5, 0.0}) <= 1e-14);
}

TEST_CASE("forward probability without evolution is a squared overlap") {
  auto rng = make_rng(61);
  ModeRegister reg = retrofock::testing::register_of_dim(4);
  FockVector p(reg, retrofock::testing::random_unit_vector(rng, reg.dim()));
  FockVector m(reg, retrofock::testing::random_unit_vector(rng, reg.dim()));

  ExperimentSetup s;
  s.preparation = devices::single_outcome_preparation("p", p);
  s.evolution = OperatorMatrix::identity_on(reg);
  s.measurement.reg = reg;
  OperatorMatrix pm = OperatorMatrix::outer_product(m, m);
  OperatorMatrix rest = OperatorMatrix::identity_on(reg);
  for (std::size_t k = 0; k < rest.m.size(); ++k) rest.m[k] -= pm.m[k];
  s.measurement.add("m", pm);
  s.measurement.add("rest", rest);

  double got = forward_probability(s, "p", "m");
  CHECK(got == doctest::Approx(std::norm(inner_product(m, p))).epsilon(1e-12));
}

TEST_CASE("orthogonal pure preparation and measurement never coincide") {
  ExperimentSetup s = two_level_setup();
  CHECK(forward_probability(s, "p0", "N=1") <= 1e-15);
  CHECK(forward_probability(s, "p0", "N=0") ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("interferometer at quarter phase splits the counts evenly") {
  ModeRegister reg({"b", "c"});
  optics::UnitarySchedule sched;
  sched.add(optics::OpticalElement::beam_splitter("b", "c"), "t_p");
  sched.add(optics::OpticalElement::phase_shifter("c", std::numbers::pi / 2));
  sched.add(optics::OpticalElement::beam_splitter("b", "c"), "t_m");

  ExperimentSetup s;
  s.preparation = devices::single_outcome_preparation(
      "in", FockVector::basis_state(reg, {0, 1}));
  s.evolution = optics::compose_schedule(sched, reg);
  s.measurement = devices::photon_counting_pom(reg, {{"c", "D0"}, {"b", "D1"}});

  // |i (1 + e^{i pi/2}) / 2|^2, evaluated from the elementary amplitudes.
  cplx amp = cplx{0.0, 0.5} * (1.0 + std::polar(1.0, std::numbers::pi / 2));
  CHECK(forward_probability(s, "in", "D0=0,D1=1") ==
        doctest::Approx(std::norm(amp)).epsilon(1e-12));
  CHECK(std::norm(amp) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("forward probabilities sum to one over the POM") {
  auto rng = make_rng(62);
  for (int rep = 0; rep < 10; ++rep) {
    std::size_t dim = 2 + rep % 5;
    ModeRegister reg = retrofock::testing::register_of_dim(dim);
    ExperimentSetup s;
    s.preparation = retrofock::testing::random_pdo(rng, reg, 3);
    s.evolution =
        OperatorMatrix(reg, retrofock::testing::random_unitary(rng, dim));
    s.measurement = retrofock::testing::random_pom(rng, reg, 4);
    for (const auto& i : s.preparation.outcome_ids()) {
      double total = 0.0;
      for (const auto& j : s.measurement.outcome_ids())
        total += forward_probability(s, i, j);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("bayes retrodiction with one preparation outcome is certain") {
  ModeRegister reg({"x"}, 1);
  ExperimentSetup s;
  s.preparation = devices::single_outcome_preparation(
      "only", FockVector::basis_state(reg, {0}));
  s.evolution = OperatorMatrix::identity_on(reg);
  s.measurement = devices::photon_counting_pom(reg, {{"x", "N"}});
  auto probs = bayes_retrodict(s, "N=0");
  CHECK(probs.at("only") == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bayes retrodiction identifies the matching preparation") {
  ExperimentSetup s = two_level_setup();
  auto probs = bayes_retrodict(s, "N=0");
  CHECK(probs.at("p0") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(probs.at("p1") == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("an impossible measurement outcome cannot be conditioned on") {
  ModeRegister reg({"x"}, 1);
  ExperimentSetup s;
  s.preparation = devices::single_outcome_preparation(
      "only", FockVector::basis_state(reg, {0}));
  s.evolution = OperatorMatrix::identity_on(reg);
  s.measurement = devices::photon_counting_pom(reg, {{"x", "N"}});
  CHECK_THROWS_AS(bayes_retrodict(s, "N=1"), std::domain_error);
  CHECK_THROWS_AS(retrodictive_probability(s, "N=1"), std::domain_error);
}

TEST_CASE("retrodictive states mirror the predictive normalization") {
  ModeRegister reg({"x"}, 1);
  ExperimentSetup s = two_level_setup();
  DensityOperator rho = retrodictive_state(s, "N=1");
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(rho.at(1, 1) - cplx{1.0, 0.0}) <= 1e-14);

  // Scaled elements normalize away their weight.
  ExperimentSetup w;
  w.preparation = s.preparation;
  w.evolution = s.evolution;
  w.measurement.reg = reg;
  OperatorMatrix half = OperatorMatrix::identity_on(reg);
  kernels::scale(cplx{0.5, 0.0}, half.m);
  w.measurement.add("half", half);
  OperatorMatrix other = OperatorMatrix::identity_on(reg);
  kernels::scale(cplx{0.5, 0.0}, other.m);
  w.measurement.add("other", other);
  DensityOperator mixed = retrodictive_state(w, "half");
  CHECK(std::abs(mixed.at(0, 0) - cplx{0.5, 0.0}) <= 1e-14);
}

TEST_CASE("the two retrodiction routes agree on random setups") {
  auto rng = make_rng(63);
  double worst = 0.0;
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t dim = 2 + rep % 9;
    ModeRegister reg = retrofock::testing::register_of_dim(dim);
    ExperimentSetup s;
    s.preparation = retrofock::testing::random_pdo(rng, reg, 2 + rep % 3);
    s.evolution =
        OperatorMatrix(reg, retrofock::testing::random_unitary(rng, dim));
    s.measurement = retrofock::testing::random_pom(rng, reg, 3);
    for (const auto& j : s.measurement.outcome_ids()) {
      auto bayes = bayes_retrodict(s, j);
      auto direct = retrodictive_probability(s, j);
      for (const auto& [i, p] : bayes)
        worst = std::max(worst, std::abs(p - direct.at(i)));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("probabilities survive moving the unitary into either device") {
  auto rng = make_rng(64);
  std::size_t dim = 5;
  ModeRegister reg = retrofock::testing::register_of_dim(dim);
  ExperimentSetup s;
  s.preparation = retrofock::testing::random_pdo(rng, reg, 3);
  s.evolution =
      OperatorMatrix(reg, retrofock::testing::random_unitary(rng, dim));
  s.measurement = retrofock::testing::random_pom(rng, reg, 3);

  ExperimentSetup into_prep;
  into_prep.preparation = devices::combine_with_unitary(s.preparation, s.evolution);
  into_prep.evolution = OperatorMatrix::identity_on(reg);
  into_prep.measurement = s.measurement;

  ExperimentSetup into_meas;
  into_meas.preparation = s.preparation;
  into_meas.evolution = OperatorMatrix::identity_on(reg);
  into_meas.measurement = devices::combine_with_unitary(s.measurement, s.evolution);

  for (const auto& i : s.preparation.outcome_ids())
    for (const auto& j : s.measurement.outcome_ids()) {
      double base = forward_probability(s, i, j);
      CHECK(forward_probability(into_prep, i, j) ==
            doctest::Approx(base).epsilon(1e-10));
      CHECK(forward_probability(into_meas, i, j) ==
            doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("measurement collapse picks the paired component") {
  // 2^{-1/2}(|a1>|b1> + |a2>|b2>) with b measured in state b1 leaves a1.
  ModeRegister reg({"a", "b"});
  ModeRegister reg_b({"b"});
  FockVector joint = FockVector::zero(reg);
  joint.amps[reg.index_of({0, 0})] = cplx{kInvSqrt2, 0.0};
  joint.amps[reg.index_of({1, 1})] = cplx{kInvSqrt2, 0.0};

  Projection p =
      collapse_at_measurement(joint, FockVector::basis_state(reg_b, {0}));
  REQUIRE_FALSE(p.impossible());
  CHECK(p.state->direction == Direction::Predictive);
  CHECK(std::abs(p.state->amp({0}) - cplx{1.0, 0.0}) <= 1e-14);
  CHECK(p.norm == doctest::Approx(kInvSqrt2).epsilon(1e-14));
}

TEST_CASE("detecting the photon in c empties mode b") {
  ModeRegister reg({"b", "c"});
  ModeRegister reg_c({"c"});
  FockVector joint = FockVector::zero(reg);
  joint.amps[reg.index_of({0, 1})] = cplx{kInvSqrt2, 0.0};
  joint.amps[reg.index_of({1, 0})] = cplx{0.0, kInvSqrt2};

  Projection p =
      collapse_at_measurement(joint, FockVector::basis_state(reg_c, {1}));
  REQUIRE_FALSE(p.impossible());
  CHECK(std::abs(p.state->amp({0}) - cplx{1.0, 0.0}) <= 1e-14);
}

TEST_CASE("collapse on an orthogonal outcome is impossible") {
  ModeRegister reg({"a", "b"}, 1);
  ModeRegister reg_b({"b"}, 1);
  FockVector joint = FockVector::zero(reg);
  joint.amps[reg.index_of({0, 0})] = cplx{1.0, 0.0};
  Projection p =
      collapse_at_measurement(joint, FockVector::basis_state(reg_b, {1}));
  CHECK(p.impossible());
}

TEST_CASE("collapse directions are enforced and assigned") {
  ModeRegister reg({"a", "b"}, 1);
  ModeRegister reg_b({"b"}, 1);
  FockVector retro = FockVector::zero(reg, Direction::Retrodictive);
  retro.amps[reg.index_of({0, 0})] = cplx{1.0, 0.0};
  CHECK_THROWS_AS(
      collapse_at_measurement(retro, FockVector::basis_state(reg_b, {0})),
      std::invalid_argument);

  FockVector pred = retro.with_direction(Direction::Predictive);
  CHECK_THROWS_AS(collapse_at_preparation(
                      pred, FockVector::basis_state(reg_b, {0}),
                      Direction::Predictive),
                  std::invalid_argument);
}

TEST_CASE("preparation collapse keeps evolving backward when asked") {
  ModeRegister reg({"a", "b"});
  ModeRegister reg_b({"b"});
  FockVector retro = FockVector::zero(reg, Direction::Retrodictive);
  retro.amps[reg.index_of({0, 0})] = cplx{kInvSqrt2, 0.0};
  retro.amps[reg.index_of({1, 1})] = cplx{kInvSqrt2, 0.0};

  Projection p = collapse_at_preparation(
      retro, FockVector::basis_state(reg_b, {0}), Direction::Retrodictive);
  REQUIRE_FALSE(p.impossible());
  CHECK(p.state->direction == Direction::Retrodictive);
  CHECK(std::abs(p.state->amp({0}) - cplx{1.0, 0.0}) <= 1e-14);
}

TEST_CASE("the retrodicted output re-emerges forward through the source") {
  // Retrodictive a0*|1>_b - i a1*|0>_b against the known entangled output
  // collapses to a predictive a0|0>_c + a1|1>_c up to a global phase.
  auto rng = make_rng(65);
  std::vector<cplx> amp = retrofock::testing::random_unit_vector(rng, 2);
  cplx a0 = amp[0], a1 = amp[1];

  ModeRegister reg_b({"b"});
  FockVector retro_b = FockVector::zero(reg_b, Direction::Retrodictive);
  retro_b.amps[reg_b.index_of({0})] = cplx{0.0, -1.0} * std::conj(a1);
  retro_b.amps[reg_b.index_of({1})] = std::conj(a0);

  ModeRegister reg_bc({"b", "c"});
  FockVector bsl_out = FockVector::zero(reg_bc);
  bsl_out.amps[reg_bc.index_of({0, 1})] = cplx{kInvSqrt2, 0.0};
  bsl_out.amps[reg_bc.index_of({1, 0})] = cplx{0.0, kInvSqrt2};

  Projection p =
      collapse_at_preparation(retro_b, bsl_out, Direction::Predictive);
  REQUIRE_FALSE(p.impossible());
  CHECK(p.state->direction == Direction::Predictive);

  ModeRegister reg_c({"c"});
  FockVector want = FockVector::zero(reg_c);
  want.amps[reg_c.index_of({0})] = a0;
  want.amps[reg_c.index_of({1})] = a1;
  CHECK(overlap_up_to_phase(*p.state, want) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate preparation collapse is impossible") {
  ModeRegister reg({"a", "b"}, 1);
  ModeRegister reg_b({"b"}, 1);
  FockVector retro = FockVector::zero(reg, Direction::Retrodictive);
  retro.amps[reg.index_of({1, 0})] = cplx{1.0, 0.0};
  Projection p = collapse_at_preparation(
      retro, FockVector::basis_state(reg_b, {1}), Direction::Retrodictive);
  CHECK(p.impossible());
}

TEST_CASE("collapse timing does not change what is observable") {
  // Lower-splitter pair, photon found in mode c: the predictive collapse
  // at the measurement and the retrodictive collapse at the preparation
  // must produce the same mode-b state and the same outcome probability.
  ModeRegister reg_bc({"b", "c"});
  ModeRegister reg_c({"c"});
  FockVector input = FockVector::basis_state(reg_bc, {0, 1});
  OperatorMatrix bsl = optics::build_element_unitary(
      optics::OpticalElement::beam_splitter("b", "c"), reg_bc);
  FockVector entangled = optics::apply_forward(bsl, input);

  // Predictive: collapse at t_m.
  Projection pred = collapse_at_measurement(
      entangled, FockVector::basis_state(reg_c, {1}));
  REQUIRE_FALSE(pred.impossible());
  double p_pred = pred.norm * pred.norm;

  // Retrodictive: the detection state runs backward (free propagation)
  // and collapses on the combined preparation's known output at t_p.
  FockVector retro_c =
      FockVector::basis_state(reg_c, {1}, Direction::Retrodictive);
  Projection retro =
      collapse_at_preparation(retro_c, entangled, Direction::Predictive);
  REQUIRE_FALSE(retro.impossible());
  double p_retro = retro.norm * retro.norm;

  CHECK(p_pred == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p_retro == doctest::Approx(p_pred).epsilon(1e-12));
  CHECK(overlap_up_to_phase(*pred.state, *retro.state) ==
        doctest::Approx(1.0).epsilon(1e-12));
}
