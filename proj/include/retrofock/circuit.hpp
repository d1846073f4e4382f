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
//
// Line-oriented circuit description language. Grammar:
//
//   modes <label>...
//   prepare <mode> vacuum
//   prepare <mode> photons=<n>
//   prepare <mode> superpose a0=<complex> a1=<complex>
//   beamsplitter <name> <mode1> <mode2> [r=<real>]
//   phase <mode> <angle>
//   propagate <mode> wavelengths=<real>
//   detect <mode> <detector-name>
//   scenario forward | backward-channel | cycle | sweep phi=<start>:<end>:<steps>
//
// '#' starts a comment. Angles are plain radians or k*pi/n expressions
// (pi, -pi/2, 3*pi/4, ...), kept as exact rationals of pi. Complex
// literals are re, imi, or re+imi / re-imi.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace retrofock::circuit {

using cplx = std::complex<double>;

struct Diagnostic {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  std::string message;
};

std::string format_diagnostic(const std::string& file, const Diagnostic& d);

struct SourcePos {
  int line = 0;
  int col = 0;
};

/// An angle, kept as an exact rational multiple of pi when written that
/// way so that e.g. phi = pi means exactly pi.
struct Angle {
  double value = 0.0;
  std::optional<std::pair<long long, long long>> pi_ratio;  // reduced, den > 0

  static Angle radians(double v);
  static Angle pi_rational(long long num, long long den);

  friend bool operator==(const Angle& a, const Angle& b) {
    return a.pi_ratio == b.pi_ratio && a.value == b.value;
  }
};

/// Parse an angle token ("1.5", "pi", "-3*pi/4"); nullopt if malformed.
std::optional<Angle> parse_angle_text(std::string_view text);
std::string angle_to_text(const Angle& a);

struct PrepareStmt {
  enum class Kind { Vacuum, Photons, Superpose };
  std::string mode;
  Kind kind = Kind::Vacuum;
  int photons = 0;
  cplx a0{0.0, 0.0};
  cplx a1{0.0, 0.0};
  SourcePos pos;

  friend bool operator==(const PrepareStmt& a, const PrepareStmt& b) {
    return a.mode == b.mode && a.kind == b.kind && a.photons == b.photons &&
           a.a0 == b.a0 && a.a1 == b.a1;
  }
};

struct BeamSplitterStmt {
  std::string name;
  std::string mode1;
  std::string mode2;
  double reflectivity = 0.5;
  SourcePos pos;

  friend bool operator==(const BeamSplitterStmt& a, const BeamSplitterStmt& b) {
    return a.name == b.name && a.mode1 == b.mode1 && a.mode2 == b.mode2 &&
           a.reflectivity == b.reflectivity;
  }
};

struct PhaseStmt {
  std::string mode;
  Angle angle;
  SourcePos pos;

  friend bool operator==(const PhaseStmt& a, const PhaseStmt& b) {
    return a.mode == b.mode && a.angle == b.angle;
  }
};

struct PropagateStmt {
  std::string mode;
  double wavelengths = 0.0;
  SourcePos pos;

  friend bool operator==(const PropagateStmt& a, const PropagateStmt& b) {
    return a.mode == b.mode && a.wavelengths == b.wavelengths;
  }
};

struct DetectStmt {
  std::string mode;
  std::string name;
  SourcePos pos;

  friend bool operator==(const DetectStmt& a, const DetectStmt& b) {
    return a.mode == b.mode && a.name == b.name;
  }
};

struct SweepSpec {
  std::string parameter = "phi";
  double start = 0.0;
  double end = 0.0;
  int steps = 0;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Parse "phi=<start>:<end>:<steps>" (bounds accept angle expressions).
/// On failure returns nullopt and, when given, fills *error.
std::optional<SweepSpec> parse_sweep_text(std::string_view text,
                                          std::string* error = nullptr);

struct ScenarioStmt {
  enum class Kind { Forward, BackwardChannel, Cycle, Sweep };
  Kind kind = Kind::Forward;
  std::optional<SweepSpec> sweep;  // Kind::Sweep only
  SourcePos pos;

  friend bool operator==(const ScenarioStmt& a, const ScenarioStmt& b) {
    return a.kind == b.kind && a.sweep == b.sweep;
  }
};

using ElementStmt = std::variant<BeamSplitterStmt, PhaseStmt, PropagateStmt>;

struct CircuitSpec {
  std::vector<std::string> modes;
  std::vector<PrepareStmt> prepares;
  std::vector<ElementStmt> elements;  // statement order = time order
  std::vector<DetectStmt> detects;
  std::optional<ScenarioStmt> scenario;

  friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;
};

struct ParseResult {
  std::optional<CircuitSpec> spec;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return spec.has_value() && diagnostics.empty(); }
};

/// Total: never throws on malformed input, reports every problem it can
/// localize with line and column.
ParseResult parse_circuit(std::string_view text);

/// Canonical text form; parse(pretty_print(parse(t))) == parse(t).
std::string pretty_print(const CircuitSpec& spec);

}  // namespace retrofock::circuit
