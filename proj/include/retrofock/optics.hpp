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

#include <string>
#include <vector>

#include "retrofock/fock.hpp"

namespace retrofock::optics {

using fock::cplx;
using fock::Direction;
using fock::FockVector;
using fock::ModeRegister;
using fock::OperatorMatrix;

/// Passive elements only. Beam splitters use the symmetric convention:
/// reflection amplitude sqrt(r) carries a factor i, transmission
/// amplitude sqrt(1-r) is real. For the 50/50 case the creation
/// operators map as b+ -> (b+ + i c+)/sqrt(2), c+ -> (c+ + i b+)/sqrt(2).
struct OpticalElement {
  enum class Kind { BeamSplitter, PhaseShifter, Propagation };

  Kind kind = Kind::PhaseShifter;
  std::vector<std::string> modes;  // two for a beam splitter, one otherwise
  double reflectivity = 0.5;       // beam splitter, in [0, 1]
  double phase = 0.0;              // phase shifter, radians, applied exactly
  double wavelengths = 0.0;        // propagation path length

  static OpticalElement beam_splitter(std::string mode_a, std::string mode_b,
                                      double reflectivity = 0.5);
  static OpticalElement phase_shifter(std::string mode, double phi);
  static OpticalElement propagation(std::string mode, double wavelengths);

  /// Phase folded into [0, 2pi) for display; evolution uses the exact value.
  double phase_mod_2pi() const;
};

/// Time-ordered element list. Labels are free-form anchors ("t_p", "t_m");
/// only the ordering matters for composition.
struct UnitarySchedule {
  struct Entry {
    OpticalElement element;
    std::string time_label;
  };
  std::vector<Entry> entries;

  void add(OpticalElement e, std::string time_label = {});
};

/// Matrix of one element on the register's truncated basis. Conserves
/// total photon number, so it is exactly unitary on the truncated space.
OperatorMatrix build_element_unitary(const OpticalElement& e,
                                     const ModeRegister& reg);

/// Product of all element unitaries in time order (first entry acts first).
OperatorMatrix compose_schedule(const UnitarySchedule& s,
                                const ModeRegister& reg);

/// Forward evolution of a predictive state: s -> U s.
FockVector apply_forward(const OperatorMatrix& u, const FockVector& s);

/// Backward evolution of a retrodictive state: s -> U^dagger s.
FockVector apply_backward(const OperatorMatrix& u, const FockVector& s);

}  // namespace retrofock::optics
