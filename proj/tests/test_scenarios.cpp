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
#include <map>
#include <numbers>

#include "retrofock/linalg.hpp"
#include "retrofock/scenarios.hpp"
#include "test_helpers.hpp"

using namespace retrofock;
using namespace retrofock::fock;
using namespace retrofock::scenarios;
using retrofock::testing::make_rng;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kPi = std::numbers::pi;

TimeMachineConfig config_of(cplx a0, cplx a1) {
  TimeMachineConfig c;
  c.a0 = a0;
  c.a1 = a1;
  return c;
}

TimeMachineConfig random_config(std::mt19937_64& rng) {
  std::vector<cplx> amp = retrofock::testing::random_unit_vector(rng, 2);
  return config_of(amp[0], amp[1]);
}

const OutcomeRecord& find_outcome(const BackwardChannelReport& r, int d0,
                                  int d1) {
  for (const auto& rec : r.outcomes)
    if (rec.d0 == d0 && rec.d1 == d1) return rec;
  REQUIRE(false);
  return r.outcomes.front();
}

// Hand-derived outcome distribution for the double-splitter arrangement
// (expand the two-splitter action on the four initial components).
std::map<std::pair<int, int>, double> analytic_probabilities(cplx a0,
                                                             cplx a1) {
  return {
      {{0, 0}, std::norm(a0) / 2.0}, {{0, 1}, 0.25},
      {{1, 0}, 0.25},                {{1, 1}, 0.0},
      {{0, 2}, std::norm(a1) / 4.0}, {{2, 0}, std::norm(a1) / 4.0},
  };
}

FockVector single_mode_state(const ModeRegister& reg, cplx c0, cplx c1) {
  FockVector v = FockVector::zero(reg);
  v.amps[reg.index_of({0})] = c0;
  v.amps[reg.index_of({1})] = c1;
  return v;
}

}  // namespace

TEST_CASE("the favored outcome sends the chosen state into the past") {
  auto rng = make_rng(71);
  for (int rep = 0; rep < 10; ++rep) {
    TimeMachineConfig c = random_config(rng);
    BackwardChannelReport r = backward_channel(c);
    const OutcomeRecord& rec = find_outcome(r, 0, 1);
    REQUIRE(rec.retro_out.has_value());
    FockVector want =
        single_mode_state(rec.retro_out->reg, c.a0, c.a1).normalized();
    CHECK(overlap_up_to_phase(*rec.retro_out, want) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("the flipped outcome sends the sign-flipped state") {
  auto rng = make_rng(72);
  for (int rep = 0; rep < 10; ++rep) {
    TimeMachineConfig c = random_config(rng);
    BackwardChannelReport r = backward_channel(c);
    const OutcomeRecord& rec = find_outcome(r, 1, 0);
    REQUIRE(rec.retro_out.has_value());
    FockVector want =
        single_mode_state(rec.retro_out->reg, c.a0, -c.a1).normalized();
    CHECK(overlap_up_to_phase(*rec.retro_out, want) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("no detection sends one photon; two detections send vacuum") {
  auto rng = make_rng(73);
  TimeMachineConfig c = random_config(rng);
  BackwardChannelReport r = backward_channel(c);

  const OutcomeRecord& none = find_outcome(r, 0, 0);
  REQUIRE(none.retro_out.has_value());
  CHECK(std::abs(none.retro_out->amp({1})) ==
        doctest::Approx(1.0).epsilon(1e-12));

  for (auto [d0, d1] : {std::pair{0, 2}, std::pair{2, 0}}) {
    const OutcomeRecord& two = find_outcome(r, d0, d1);
    REQUIRE(two.retro_out.has_value());
    CHECK(std::abs(two.retro_out->amp({0})) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("outcome probabilities match the hand-derived table") {
  auto rng = make_rng(74);
  for (int rep = 0; rep < 20; ++rep) {
    TimeMachineConfig c = rep == 0 ? config_of(kInvSqrt2, kInvSqrt2)
                                   : random_config(rng);
    BackwardChannelReport r = backward_channel(c);
    auto want = analytic_probabilities(c.a0, c.a1);
    double total = 0.0;
    for (const auto& rec : r.outcomes) {
      CHECK(rec.probability ==
            doctest::Approx(want.at({rec.d0, rec.d1})).scale(1).epsilon(1e-10));
      total += rec.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("the balanced config reproduces the quarter/eighth table") {
  BackwardChannelReport r = backward_channel(config_of(kInvSqrt2, kInvSqrt2));
  CHECK(find_outcome(r, 0, 0).probability == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(find_outcome(r, 0, 1).probability == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(find_outcome(r, 1, 0).probability == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(find_outcome(r, 1, 1).probability <= 1e-12);
  CHECK(find_outcome(r, 0, 2).probability == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(find_outcome(r, 2, 0).probability == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("probability-zero outcomes carry no state") {
  // With a1 = 0 no two-photon event can happen.
  BackwardChannelReport r = backward_channel(config_of(1.0, 0.0));
  for (auto [d0, d1] : {std::pair{0, 2}, std::pair{2, 0}, std::pair{1, 1}}) {
    const OutcomeRecord& rec = find_outcome(r, d0, d1);
    CHECK(rec.probability == 0.0);
    CHECK_FALSE(rec.retro_out.has_value());
  }
}

TEST_CASE("the averaged sent-back state is the maximally mixed qubit") {
  auto rng = make_rng(75);
  TimeMachineConfig c = random_config(rng);
  BackwardChannelReport r = backward_channel(c);
  CHECK(r.averaged_state.trace().real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(r.averaged_state.at(0, 0) - cplx{0.5, 0.0}) <= 1e-9);
  CHECK(std::abs(r.averaged_state.at(1, 1) - cplx{0.5, 0.0}) <= 1e-9);
  CHECK(std::abs(r.averaged_state.at(0, 1)) <= 1e-9);
  CHECK(std::abs(r.averaged_state.at(2, 2)) <= 1e-9);
}

TEST_CASE("no information about the chosen amplitudes leaks backward") {
  std::vector<TimeMachineConfig> configs = {
      config_of(1.0, 0.0), config_of(0.0, 1.0),
      config_of(kInvSqrt2, kInvSqrt2),
      config_of(0.6, cplx{0.0, 0.8})};
  NoSignalingReport r = no_signaling_check(configs);
  CHECK(r.pass);
  CHECK(r.max_pairwise_trace_distance <= 1e-9);
  CHECK(r.max_oracle_trace_distance <= 1e-9);
  CHECK(std::abs(r.oracle_state.at(0, 0) - cplx{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(r.oracle_state.at(1, 1) - cplx{0.5, 0.0}) <= 1e-12);
}

TEST_CASE("a single config passes the no-signaling check vacuously") {
  std::vector<TimeMachineConfig> configs = {config_of(0.8, 0.6)};
  NoSignalingReport r = no_signaling_check(configs);
  CHECK(r.pass);
  CHECK(r.max_pairwise_trace_distance == 0.0);
}

TEST_CASE("a fractional shared path would break the channel but not physics") {
  TimeMachineConfig c = config_of(kInvSqrt2, kInvSqrt2);
  c.path_b_wavelength_fraction = 0.2;
  BackwardChannelReport r = backward_channel(c);
  double total = 0.0;
  for (const auto& rec : r.outcomes) total += rec.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("opposite-phase rejuvenation makes the favored cycle impossible") {
  CycleReport r = cycle_analysis({kPi});
  const CycleOutcome& fav = r.outcomes[0];
  CHECK(fav.d0 == 0);
  CHECK(fav.d1 == 1);
  CHECK(std::abs(fav.overlap) <= 1e-12);
  CHECK(fav.cycle_probability <= 1e-12);
  CHECK(fav.verdict == Verdict::Inconsistent);
}

TEST_CASE("opposite-phase rejuvenation closes the flipped cycle") {
  CycleReport r = cycle_analysis({kPi});
  const CycleOutcome& flip = r.outcomes[1];
  CHECK(flip.d0 == 1);
  CHECK(flip.d1 == 0);
  CHECK(flip.cycle_probability >= 1.0 - 1e-12);
  CHECK(flip.verdict == Verdict::Consistent);
}

TEST_CASE("zero-phase rejuvenation flips the verdicts") {
  CycleReport r = cycle_analysis({0.0});
  CHECK(r.outcomes[0].verdict == Verdict::Consistent);
  CHECK(r.outcomes[0].cycle_probability >= 1.0 - 1e-12);
  CHECK(r.outcomes[1].verdict == Verdict::Inconsistent);
  CHECK(r.outcomes[1].cycle_probability <= 1e-12);
}

TEST_CASE("quarter-phase rejuvenation gives an even chance") {
  CycleReport r = cycle_analysis({kPi / 2});
  CHECK(r.outcomes[0].cycle_probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.outcomes[0].verdict == Verdict::Partial);
}

TEST_CASE("the two cycle outcomes exhaust the single photon") {
  auto rng = make_rng(76);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int rep = 0; rep < 25; ++rep) {
    CycleReport r = cycle_analysis({u(rng)});
    CHECK(r.outcomes[0].cycle_probability + r.outcomes[1].cycle_probability ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("cycle overlap follows the interference formula") {
  for (int k = 0; k < 16; ++k) {
    double phi = 2.0 * kPi * k / 16.0;
    CycleReport r = cycle_analysis({phi});
    cplx want = 0.5 * (1.0 + std::polar(1.0, phi));
    CHECK(std::abs(r.outcomes[0].overlap - want) <= 1e-12);
  }
}

TEST_CASE("three-way agreement on a dense phase grid") {
  const int n = 256;
  double worst_po = 0.0, worst_pf = 0.0, worst_of = 0.0;
  for (int k = 0; k < n; ++k) {
    double phi = 2.0 * kPi * k / n;
    CycleReport r = cycle_analysis({phi});
    double retro = r.outcomes[0].cycle_probability;
    double path = std::norm(path_amplitude_oracle(phi));
    double fwd = forward_interferometer_oracle(phi).at("D0=0,D1=1");
    worst_po = std::max(worst_po, std::abs(retro - path));
    worst_pf = std::max(worst_pf, std::abs(retro - fwd));
    worst_of = std::max(worst_of, std::abs(path - fwd));
  }
  CHECK(worst_po <= 1e-9);
  CHECK(worst_pf <= 1e-9);
  CHECK(worst_of <= 1e-9);
}

TEST_CASE("a full turn of the rejuvenator changes nothing") {
  for (double phi : {0.0, 0.7, kPi / 3}) {
    CycleReport a = cycle_analysis({phi});
    CycleReport b = cycle_analysis({phi + 2.0 * kPi});
    for (std::size_t k = 0; k < a.outcomes.size(); ++k) {
      CHECK(std::abs(a.outcomes[k].cycle_probability -
                     b.outcomes[k].cycle_probability) <= 1e-12);
      CHECK(std::abs(a.outcomes[k].overlap - b.outcomes[k].overlap) <= 1e-12);
    }
  }
}

TEST_CASE("path amplitudes cancel at pi and add at zero") {
  CHECK(std::abs(path_amplitude_oracle(kPi)) <= 1e-15);
  cplx at_zero = path_amplitude_oracle(0.0);
  CHECK(std::abs(at_zero - cplx{0.0, 1.0}) <= 1e-15);
  CHECK(std::norm(at_zero) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::norm(path_amplitude_oracle(kPi / 2)) ==
        doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("the forward interferometer oracle hits the textbook points") {
  auto at0 = forward_interferometer_oracle(0.0);
  CHECK(at0.at("D0=0,D1=1") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at0.at("D0=1,D1=0") == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  auto at_pi = forward_interferometer_oracle(kPi);
  CHECK(at_pi.at("D0=0,D1=1") == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(at_pi.at("D0=1,D1=0") == doctest::Approx(1.0).epsilon(1e-12));

  auto at_third = forward_interferometer_oracle(2.0 * kPi / 3.0);
  double want = std::norm(path_amplitude_oracle(2.0 * kPi / 3.0));
  CHECK(want == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(at_third.at("D0=0,D1=1") == doctest::Approx(want).epsilon(1e-12));
  CHECK(at_third.at("D0=1,D1=0") == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("unnormalized configs are rejected") {
  CHECK_THROWS_AS(backward_channel(config_of(1.0, 1.0)),
                  std::invalid_argument);
}
