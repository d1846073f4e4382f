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
#include <vector>

#include "retrofock/circuit.hpp"

namespace retrofock::circuit {

/// Result rows with a fixed column order. Cells are already formatted
/// (reals and probabilities with 12 significant digits, complex numbers
/// as re+imi), so serialization is pure and byte-stable.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

std::string format_real(double v);
std::string format_complex(cplx v);

/// RFC 4180 style: header row first, fields quoted when they contain a
/// comma, quote or newline.
std::string emit_csv(const Table& t);

/// {"columns": [...], "rows": [[...], ...]}
std::string emit_json(const Table& t);

/// Inverse of emit_json; throws std::runtime_error on malformed input.
Table parse_json_table(const std::string& text);

enum class TableFormat { Csv, Json };
std::string emit(const Table& t, TableFormat format);

struct RunResult {
  std::optional<Table> table;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return table.has_value() && diagnostics.empty(); }
};

/// Execute the circuit's scenario. A sweep argument (from the CLI) turns
/// a cycle scenario into a grid scan over the rejuvenator phase and
/// overrides an in-file sweep range. Structural problems (a scenario fed
/// a circuit of the wrong shape) come back as diagnostics anchored to the
/// offending statement.
RunResult run(const CircuitSpec& spec, const std::optional<SweepSpec>& sweep);

}  // namespace retrofock::circuit
