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

#include "retrofock/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace retrofock::optics {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// i^p times s^p, with the i power kept exact.
cplx i_pow_scaled(int p, double s) {
  double mag = std::pow(s, p);
  switch (p & 3) {
    case 0: return {mag, 0.0};
    case 1: return {0.0, mag};
    case 2: return {-mag, 0.0};
    default: return {0.0, -mag};
  }
}

OperatorMatrix diagonal_phase(const ModeRegister& reg, std::size_t mode_pos,
                              double phi_per_photon) {
  std::size_t d = reg.dim();
  std::vector<cplx> m(d * d, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < d; ++k) {
    int n = reg.occupations(k)[mode_pos];
    m[k * d + k] = (n == 0 || phi_per_photon == 0.0)
                       ? cplx{1.0, 0.0}
                       : std::polar(1.0, phi_per_photon * n);
  }
  return OperatorMatrix(reg, std::move(m));
}

OperatorMatrix beam_splitter_unitary(const OpticalElement& e,
                                     const ModeRegister& reg) {
  std::size_t p = reg.mode_position(e.modes[0]);
  std::size_t q = reg.mode_position(e.modes[1]);
  double s = std::sqrt(e.reflectivity);
  double t = std::sqrt(1.0 - e.reflectivity);

  std::size_t d = reg.dim();
  std::vector<cplx> m(d * d, cplx{0.0, 0.0});

  // Expand the transformed creation-operator monomial for each input
  // basis state: p+^np q+^nq maps through p+ -> t p+ + i s q+,
  // q+ -> t q+ + i s p+. Photon number is conserved, so every resulting
  // monomial stays inside the truncated basis.
  for (std::size_t col = 0; col < d; ++col) {
    const std::vector<int>& occ = reg.occupations(col);
    int np = occ[p];
    int nq = occ[q];
    double in_norm = std::sqrt(factorial(np) * factorial(nq));
    std::vector<int> target = occ;
    for (int k = 0; k <= np; ++k) {
      for (int l = 0; l <= nq; ++l) {
        int mp = k + l;
        int mq = np + nq - k - l;
        cplx coeff = binomial(np, k) * binomial(nq, l) *
                     std::pow(t, k + nq - l) *
                     i_pow_scaled(np - k + l, s);
        coeff *= std::sqrt(factorial(mp) * factorial(mq)) / in_norm;
        target[p] = mp;
        target[q] = mq;
        m[reg.index_of(target) * d + col] += coeff;
      }
    }
  }
  return OperatorMatrix(reg, std::move(m));
}

}  // namespace

OpticalElement OpticalElement::beam_splitter(std::string mode_a,
                                             std::string mode_b,
                                             double reflectivity) {
  if (reflectivity < 0.0 || reflectivity > 1.0)
    throw std::invalid_argument("beam splitter reflectivity must be in [0,1]");
  if (mode_a == mode_b)
    throw std::invalid_argument("beam splitter needs two distinct modes");
  OpticalElement e;
  e.kind = Kind::BeamSplitter;
  e.modes = {std::move(mode_a), std::move(mode_b)};
  e.reflectivity = reflectivity;
  return e;
}

OpticalElement OpticalElement::phase_shifter(std::string mode, double phi) {
  OpticalElement e;
  e.kind = Kind::PhaseShifter;
  e.modes = {std::move(mode)};
  e.phase = phi;
  return e;
}

OpticalElement OpticalElement::propagation(std::string mode,
                                           double wavelengths) {
  OpticalElement e;
  e.kind = Kind::Propagation;
  e.modes = {std::move(mode)};
  e.wavelengths = wavelengths;
  return e;
}

double OpticalElement::phase_mod_2pi() const {
  double tau = 2.0 * std::numbers::pi;
  double r = std::fmod(phase, tau);
  return r < 0.0 ? r + tau : r;
}

void UnitarySchedule::add(OpticalElement e, std::string time_label) {
  entries.push_back({std::move(e), std::move(time_label)});
}

OperatorMatrix build_element_unitary(const OpticalElement& e,
                                     const ModeRegister& reg) {
  for (const std::string& mode : e.modes)
    if (!reg.has_mode(mode))
      throw std::out_of_range("element acts on unknown mode: " + mode);

  switch (e.kind) {
    case OpticalElement::Kind::BeamSplitter:
      return beam_splitter_unitary(e, reg);
    case OpticalElement::Kind::PhaseShifter:
      return diagonal_phase(reg, reg.mode_position(e.modes[0]), e.phase);
    case OpticalElement::Kind::Propagation: {
      // Only the fractional part of the path length is observable; an
      // integer number of wavelengths is exactly the identity.
      double frac = e.wavelengths - std::floor(e.wavelengths);
      return diagonal_phase(reg, reg.mode_position(e.modes[0]),
                            2.0 * std::numbers::pi * frac);
    }
  }
  throw std::logic_error("unreachable element kind");
}

OperatorMatrix compose_schedule(const UnitarySchedule& s,
                                const ModeRegister& reg) {
  OperatorMatrix u = OperatorMatrix::identity_on(reg);
  for (const auto& entry : s.entries)
    u = build_element_unitary(entry.element, reg).compose(u);
  return u;
}

FockVector apply_forward(const OperatorMatrix& u, const FockVector& s) {
  if (s.direction != Direction::Predictive)
    throw std::invalid_argument(
        "apply_forward takes a predictive state; use apply_backward for "
        "retrodictive states");
  if (u.reg != s.reg)
    throw std::invalid_argument("operator and state registers differ");
  return FockVector(s.reg, u.apply(s.amps), Direction::Predictive);
}

FockVector apply_backward(const OperatorMatrix& u, const FockVector& s) {
  if (s.direction != Direction::Retrodictive)
    throw std::invalid_argument(
        "apply_backward takes a retrodictive state; use apply_forward for "
        "predictive states");
  if (u.reg != s.reg)
    throw std::invalid_argument("operator and state registers differ");
  return FockVector(s.reg, u.apply_adjoint(s.amps), Direction::Retrodictive);
}

}  // namespace retrofock::optics
