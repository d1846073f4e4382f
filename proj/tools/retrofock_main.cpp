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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bundled_circuits.hpp"
#include "retrofock/circuit.hpp"
#include "retrofock/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitIo = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_diagnostics(const std::string& file,
                       const std::vector<retrofock::circuit::Diagnostic>& ds) {
  for (const auto& d : ds)
    std::cerr << retrofock::circuit::format_diagnostic(file, d) << "\n";
}

int write_output(const std::string& text, const std::string& out_path) {
  // --out wins; otherwise the RETROFOCK_OUT environment override; else
  // stdout.
  std::string path = out_path;
  if (path.empty()) {
    const char* env = std::getenv("RETROFOCK_OUT");
    if (env != nullptr) path = env;
  }
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return kExitIo;
  }
  out << text;
  if (!out) {
    std::cerr << "error: failed writing output file: " << path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int run_pipeline(const std::string& name, const std::string& text,
                 const std::string& sweep_arg, const std::string& format,
                 const std::string& out_path) {
  using namespace retrofock::circuit;

  ParseResult parsed = parse_circuit(text);
  if (!parsed.ok()) {
    print_diagnostics(name, parsed.diagnostics);
    return kExitDiagnostics;
  }

  std::optional<SweepSpec> sweep;
  if (!sweep_arg.empty()) {
    std::string why;
    sweep = parse_sweep_text(sweep_arg, &why);
    if (!sweep) {
      std::cerr << "error: --sweep " << sweep_arg << ": " << why << "\n";
      return kExitDiagnostics;
    }
  }

  RunResult result = run(*parsed.spec, sweep);
  if (!result.ok()) {
    print_diagnostics(name, result.diagnostics);
    return kExitDiagnostics;
  }

  TableFormat fmt = format == "json" ? TableFormat::Json : TableFormat::Csv;
  return write_output(emit(*result.table, fmt), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated-Fock-space simulator for passive linear optics"};
  app.require_subcommand(1);

  std::string file, demo_name, sweep_arg, format = "csv", out_path;

  CLI::App* validate = app.add_subcommand(
      "validate", "Parse a circuit file and report diagnostics");
  validate->add_option("file", file, "circuit file")->required();

  CLI::App* run_cmd =
      app.add_subcommand("run", "Run a circuit file's scenario");
  run_cmd->add_option("file", file, "circuit file")->required();
  run_cmd->add_option("--sweep", sweep_arg, "phi=<start>:<end>:<steps>");
  run_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--out", out_path, "write the table to this file");

  CLI::App* demo = app.add_subcommand("demo", "Run a bundled circuit");
  demo->add_option("name", demo_name, "fig2 or fig3")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3"}));
  demo->add_option("--sweep", sweep_arg, "phi=<start>:<end>:<steps>");
  demo->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  demo->add_option("--out", out_path, "write the table to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitDiagnostics;
  }

  if (validate->parsed()) {
    auto text = read_file(file);
    if (!text) {
      std::cerr << "error: cannot read file: " << file << "\n";
      return kExitIo;
    }
    auto parsed = retrofock::circuit::parse_circuit(*text);
    if (!parsed.ok()) {
      print_diagnostics(file, parsed.diagnostics);
      return kExitDiagnostics;
    }
    std::cout << file << ": ok\n";
    return kExitOk;
  }

  if (run_cmd->parsed()) {
    auto text = read_file(file);
    if (!text) {
      std::cerr << "error: cannot read file: " << file << "\n";
      return kExitIo;
    }
    return run_pipeline(file, *text, sweep_arg, format, out_path);
  }

  // demo
  const char* text = demo_name == "fig2" ? retrofock::bundled::kFig2
                                         : retrofock::bundled::kFig3;
  return run_pipeline(demo_name + ".circ", text, sweep_arg, format, out_path);
}
