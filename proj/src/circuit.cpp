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

#include "retrofock/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <set>

namespace retrofock::circuit {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

std::optional<long long> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

// <re>, <im>i, <re>+<im>i, <re>-<im>i, i, -i
std::optional<cplx> parse_complex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    auto re = parse_double(text);
    if (!re) return std::nullopt;
    return cplx{*re, 0.0};
  }
  std::string_view body = text.substr(0, text.size() - 1);
  // Look for the sign splitting the real and imaginary parts, skipping a
  // leading sign and exponent signs.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto parse_signed_unit = [](std::string_view s) -> std::optional<double> {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split == std::string_view::npos) {
    auto im = parse_signed_unit(body);
    if (!im) return std::nullopt;
    return cplx{0.0, *im};
  }
  auto re = parse_double(body.substr(0, split));
  auto im = parse_signed_unit(body.substr(split));
  if (!re || !im) return std::nullopt;
  return cplx{*re, *im};
}

std::string complex_to_text(cplx v) {
  if (v.imag() == 0.0) return fmt_double(v.real());
  std::string im = fmt_double(v.imag());
  if (v.real() == 0.0) return im + "i";
  std::string re = fmt_double(v.real());
  if (v.imag() < 0.0) return re + im + "i";
  return re + "+" + im + "i";
}

struct Token {
  std::string text;
  int col = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[k]))) {
      ++k;
      continue;
    }
    if (line[k] == '#') break;
    std::size_t start = k;
    while (k < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[k])) &&
           line[k] != '#')
      ++k;
    out.push_back(
        {std::string(line.substr(start, k - start)), static_cast<int>(start) + 1});
  }
  return out;
}

// key=value split; returns nullopt when '=' is absent.
std::optional<std::pair<std::string_view, std::string_view>> split_kv(
    std::string_view token) {
  std::size_t eq = token.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  return std::pair{token.substr(0, eq), token.substr(eq + 1)};
}

}  // namespace

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  return file + ":" + std::to_string(d.line) + ":" + std::to_string(d.col) +
         ": error: " + d.message;
}

Angle Angle::radians(double v) {
  Angle a;
  a.value = v;
  return a;
}

Angle Angle::pi_rational(long long num, long long den) {
  if (den == 0) den = 1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Angle a;
  a.pi_ratio = {num, den};
  a.value = std::numbers::pi * static_cast<double>(num) /
            static_cast<double>(den);
  return a;
}

std::optional<Angle> parse_angle_text(std::string_view text) {
  std::size_t pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) {
    auto v = parse_double(text);
    if (!v) return std::nullopt;
    return Angle::radians(*v);
  }

  std::string_view before = text.substr(0, pi_pos);
  std::string_view after = text.substr(pi_pos + 2);

  long long num = 1;
  if (before == "-") {
    num = -1;
  } else if (!before.empty()) {
    if (before.back() != '*') return std::nullopt;
    auto k = parse_int(before.substr(0, before.size() - 1));
    if (!k) return std::nullopt;
    num = *k;
  }

  long long den = 1;
  if (!after.empty()) {
    if (after.front() != '/') return std::nullopt;
    auto n = parse_int(after.substr(1));
    if (!n || *n <= 0) return std::nullopt;
    den = *n;
  }
  return Angle::pi_rational(num, den);
}

std::string angle_to_text(const Angle& a) {
  if (!a.pi_ratio) return fmt_double(a.value);
  auto [num, den] = *a.pi_ratio;
  std::string head;
  if (num == 1)
    head = "pi";
  else if (num == -1)
    head = "-pi";
  else
    head = std::to_string(num) + "*pi";
  if (den == 1) return head;
  return head + "/" + std::to_string(den);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    std::size_t start = 0;
    int line_no = 0;
    while (start <= text_.size()) {
      std::size_t nl = text_.find('\n', start);
      std::string_view line =
          text_.substr(start, nl == std::string_view::npos ? text_.size() - start
                                                           : nl - start);
      ++line_no;
      parse_line(line, line_no);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    finish();
    ParseResult result;
    result.diagnostics = std::move(diags_);
    if (result.diagnostics.empty()) result.spec = std::move(spec_);
    return result;
  }

 private:
  std::string_view text_;
  CircuitSpec spec_;
  std::vector<Diagnostic> diags_;
  bool saw_modes_ = false;
  std::set<std::string> detector_names_;

  void error(int line, int col, std::string msg) {
    diags_.push_back({line, col, std::move(msg)});
  }

  bool known_mode(const std::string& label) const {
    return std::find(spec_.modes.begin(), spec_.modes.end(), label) !=
           spec_.modes.end();
  }

  // True when the token names a declared mode; diagnostic otherwise.
  bool require_mode(const Token& t, int line) {
    if (known_mode(t.text)) return true;
    error(line, t.col, "unknown mode '" + t.text + "'");
    return false;
  }

  void parse_line(std::string_view line, int line_no) {
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) return;
    const std::string& kw = toks[0].text;

    if (kw == "modes")
      parse_modes(toks, line_no);
    else if (kw == "prepare")
      parse_prepare(toks, line_no);
    else if (kw == "beamsplitter")
      parse_beamsplitter(toks, line_no);
    else if (kw == "phase")
      parse_phase(toks, line_no);
    else if (kw == "propagate")
      parse_propagate(toks, line_no);
    else if (kw == "detect")
      parse_detect(toks, line_no);
    else if (kw == "scenario")
      parse_scenario(toks, line_no);
    else
      error(line_no, toks[0].col, "unknown keyword '" + kw + "'");
  }

  void parse_modes(const std::vector<Token>& t, int line) {
    if (saw_modes_) {
      error(line, t[0].col, "modes already declared");
      return;
    }
    if (t.size() < 2) {
      error(line, t[0].col, "modes needs at least one label");
      return;
    }
    saw_modes_ = true;
    for (std::size_t k = 1; k < t.size(); ++k) {
      if (known_mode(t[k].text)) {
        error(line, t[k].col, "duplicate mode label '" + t[k].text + "'");
        continue;
      }
      spec_.modes.push_back(t[k].text);
    }
  }

  void parse_prepare(const std::vector<Token>& t, int line) {
    if (t.size() < 3) {
      error(line, t[0].col, "prepare needs a mode and a kind");
      return;
    }
    if (!require_mode(t[1], line)) return;
    for (const PrepareStmt& p : spec_.prepares)
      if (p.mode == t[1].text) {
        error(line, t[1].col, "mode '" + t[1].text + "' prepared twice");
        return;
      }

    PrepareStmt stmt;
    stmt.mode = t[1].text;
    stmt.pos = {line, t[0].col};
    const std::string& kind = t[2].text;

    if (kind == "vacuum") {
      stmt.kind = PrepareStmt::Kind::Vacuum;
      if (t.size() > 3) {
        error(line, t[3].col, "unexpected argument after 'vacuum'");
        return;
      }
    } else if (auto kv = split_kv(kind); kv && kv->first == "photons") {
      stmt.kind = PrepareStmt::Kind::Photons;
      auto n = parse_int(kv->second);
      if (!n || *n < 0) {
        error(line, t[2].col, "photons needs a non-negative integer");
        return;
      }
      if (*n > 6) {
        error(line, t[2].col, "photon count too large (limit 6)");
        return;
      }
      stmt.photons = static_cast<int>(*n);
      if (t.size() > 3) {
        error(line, t[3].col, "unexpected argument after photon count");
        return;
      }
    } else if (kind == "superpose") {
      stmt.kind = PrepareStmt::Kind::Superpose;
      bool have_a0 = false, have_a1 = false;
      for (std::size_t k = 3; k < t.size(); ++k) {
        auto kv = split_kv(t[k].text);
        if (!kv) {
          error(line, t[k].col, "expected a0=<complex> or a1=<complex>");
          return;
        }
        auto v = parse_complex(kv->second);
        if (!v) {
          error(line, t[k].col, "malformed complex literal '" +
                                    std::string(kv->second) + "'");
          return;
        }
        if (kv->first == "a0") {
          stmt.a0 = *v;
          have_a0 = true;
        } else if (kv->first == "a1") {
          stmt.a1 = *v;
          have_a1 = true;
        } else {
          error(line, t[k].col,
                "unknown superpose key '" + std::string(kv->first) + "'");
          return;
        }
      }
      if (!have_a0 || !have_a1) {
        error(line, t[2].col, "superpose needs both a0= and a1=");
        return;
      }
      double n = std::norm(stmt.a0) + std::norm(stmt.a1);
      if (std::abs(n - 1.0) > fock_norm_tol_) {
        error(line, t[2].col,
              "superposition is not normalized: |a0|^2+|a1|^2 = " +
                  fmt_double(n));
        return;
      }
    } else {
      error(line, t[2].col,
            "prepare kind must be vacuum, photons=<n> or superpose");
      return;
    }
    spec_.prepares.push_back(std::move(stmt));
  }

  void parse_beamsplitter(const std::vector<Token>& t, int line) {
    if (t.size() < 4) {
      error(line, t[0].col, "beamsplitter needs a name and two modes");
      return;
    }
    BeamSplitterStmt stmt;
    stmt.name = t[1].text;
    stmt.pos = {line, t[0].col};
    if (!require_mode(t[2], line) || !require_mode(t[3], line)) return;
    stmt.mode1 = t[2].text;
    stmt.mode2 = t[3].text;
    if (stmt.mode1 == stmt.mode2) {
      error(line, t[3].col, "beamsplitter modes must differ");
      return;
    }
    if (t.size() > 4) {
      auto kv = split_kv(t[4].text);
      if (!kv || kv->first != "r") {
        error(line, t[4].col, "expected r=<reflectivity>");
        return;
      }
      auto r = parse_double(kv->second);
      if (!r) {
        error(line, t[4].col, "malformed reflectivity");
        return;
      }
      if (*r < 0.0 || *r > 1.0) {
        error(line, t[4].col,
              "reflectivity out of range [0,1]: " + std::string(kv->second));
        return;
      }
      stmt.reflectivity = *r;
      if (t.size() > 5) {
        error(line, t[5].col, "unexpected argument");
        return;
      }
    }
    spec_.elements.emplace_back(std::move(stmt));
  }

  void parse_phase(const std::vector<Token>& t, int line) {
    if (t.size() != 3) {
      error(line, t[0].col, "phase needs a mode and an angle");
      return;
    }
    if (!require_mode(t[1], line)) return;
    auto angle = parse_angle_text(t[2].text);
    if (!angle) {
      error(line, t[2].col, "malformed angle '" + t[2].text + "'");
      return;
    }
    PhaseStmt stmt;
    stmt.mode = t[1].text;
    stmt.angle = *angle;
    stmt.pos = {line, t[0].col};
    spec_.elements.emplace_back(std::move(stmt));
  }

  void parse_propagate(const std::vector<Token>& t, int line) {
    if (t.size() != 3) {
      error(line, t[0].col, "propagate needs a mode and wavelengths=<real>");
      return;
    }
    if (!require_mode(t[1], line)) return;
    auto kv = split_kv(t[2].text);
    if (!kv || kv->first != "wavelengths") {
      error(line, t[2].col, "expected wavelengths=<real>");
      return;
    }
    auto w = parse_double(kv->second);
    if (!w || *w < 0.0) {
      error(line, t[2].col, "wavelengths must be a non-negative real");
      return;
    }
    PropagateStmt stmt;
    stmt.mode = t[1].text;
    stmt.wavelengths = *w;
    stmt.pos = {line, t[0].col};
    spec_.elements.emplace_back(std::move(stmt));
  }

  void parse_detect(const std::vector<Token>& t, int line) {
    if (t.size() != 3) {
      error(line, t[0].col, "detect needs a mode and a detector name");
      return;
    }
    if (!require_mode(t[1], line)) return;
    if (!detector_names_.insert(t[2].text).second) {
      error(line, t[2].col, "duplicate detector name '" + t[2].text + "'");
      return;
    }
    for (const DetectStmt& d : spec_.detects)
      if (d.mode == t[1].text) {
        error(line, t[1].col, "mode '" + t[1].text + "' already has a detector");
        return;
      }
    DetectStmt stmt;
    stmt.mode = t[1].text;
    stmt.name = t[2].text;
    stmt.pos = {line, t[0].col};
    spec_.detects.push_back(std::move(stmt));
  }

  void parse_scenario(const std::vector<Token>& t, int line) {
    if (spec_.scenario) {
      error(line, t[0].col, "duplicate scenario directive");
      return;
    }
    if (t.size() < 2) {
      error(line, t[0].col, "scenario needs a kind");
      return;
    }
    ScenarioStmt stmt;
    stmt.pos = {line, t[0].col};
    const std::string& kind = t[1].text;
    if (kind == "forward") {
      stmt.kind = ScenarioStmt::Kind::Forward;
    } else if (kind == "backward-channel") {
      stmt.kind = ScenarioStmt::Kind::BackwardChannel;
    } else if (kind == "cycle") {
      stmt.kind = ScenarioStmt::Kind::Cycle;
    } else if (kind == "sweep") {
      stmt.kind = ScenarioStmt::Kind::Sweep;
      if (t.size() != 3) {
        error(line, t[1].col, "sweep needs phi=<start>:<end>:<steps>");
        return;
      }
      auto sweep = parse_sweep_arg(t[2], line);
      if (!sweep) return;
      stmt.sweep = *sweep;
    } else {
      error(line, t[1].col,
            "scenario kind must be forward, backward-channel, cycle or sweep");
      return;
    }
    if (stmt.kind != ScenarioStmt::Kind::Sweep && t.size() > 2) {
      error(line, t[2].col, "unexpected argument");
      return;
    }
    spec_.scenario = std::move(stmt);
  }

  std::optional<SweepSpec> parse_sweep_arg(const Token& t, int line) {
    std::string why;
    auto sweep = parse_sweep_text(t.text, &why);
    if (!sweep) error(line, t.col, why);
    return sweep;
  }

  void finish() {
    if (!saw_modes_ && diags_.empty())
      error(1, 1, "missing modes declaration");
  }

  static constexpr double fock_norm_tol_ = 1e-9;
};

}  // namespace

std::optional<SweepSpec> parse_sweep_text(std::string_view text,
                                          std::string* error) {
  auto fail = [&](std::string why) -> std::optional<SweepSpec> {
    if (error) *error = std::move(why);
    return std::nullopt;
  };
  auto kv = split_kv(text);
  if (!kv || kv->first != "phi") return fail("only phi sweeps are supported");
  std::string_view body = kv->second;
  std::size_t c1 = body.find(':');
  std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos
                                                : body.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos)
    return fail("sweep format is phi=<start>:<end>:<steps>");
  auto start = parse_angle_text(body.substr(0, c1));
  auto end = parse_angle_text(body.substr(c1 + 1, c2 - c1 - 1));
  auto steps = parse_int(body.substr(c2 + 1));
  if (!start || !end || !steps) return fail("malformed sweep bounds");
  if (*steps < 2) return fail("sweep needs at least 2 steps");
  if (end->value <= start->value) return fail("sweep end must exceed start");
  SweepSpec s;
  s.start = start->value;
  s.end = end->value;
  s.steps = static_cast<int>(*steps);
  return s;
}

ParseResult parse_circuit(std::string_view text) {
  return Parser(text).run();
}

std::string pretty_print(const CircuitSpec& spec) {
  std::string out = "modes";
  for (const std::string& m : spec.modes) out += " " + m;
  out += "\n";

  for (const PrepareStmt& p : spec.prepares) {
    out += "prepare " + p.mode + " ";
    switch (p.kind) {
      case PrepareStmt::Kind::Vacuum:
        out += "vacuum";
        break;
      case PrepareStmt::Kind::Photons:
        out += "photons=" + std::to_string(p.photons);
        break;
      case PrepareStmt::Kind::Superpose:
        out += "superpose a0=" + complex_to_text(p.a0) +
               " a1=" + complex_to_text(p.a1);
        break;
    }
    out += "\n";
  }

  for (const ElementStmt& e : spec.elements) {
    if (const auto* bs = std::get_if<BeamSplitterStmt>(&e)) {
      out += "beamsplitter " + bs->name + " " + bs->mode1 + " " + bs->mode2 +
             " r=" + fmt_double(bs->reflectivity) + "\n";
    } else if (const auto* ph = std::get_if<PhaseStmt>(&e)) {
      out += "phase " + ph->mode + " " + angle_to_text(ph->angle) + "\n";
    } else if (const auto* pr = std::get_if<PropagateStmt>(&e)) {
      out += "propagate " + pr->mode +
             " wavelengths=" + fmt_double(pr->wavelengths) + "\n";
    }
  }

  for (const DetectStmt& d : spec.detects)
    out += "detect " + d.mode + " " + d.name + "\n";

  if (spec.scenario) {
    out += "scenario ";
    switch (spec.scenario->kind) {
      case ScenarioStmt::Kind::Forward:
        out += "forward";
        break;
      case ScenarioStmt::Kind::BackwardChannel:
        out += "backward-channel";
        break;
      case ScenarioStmt::Kind::Cycle:
        out += "cycle";
        break;
      case ScenarioStmt::Kind::Sweep: {
        const SweepSpec& s = *spec.scenario->sweep;
        out += "sweep phi=" + fmt_double(s.start) + ":" + fmt_double(s.end) +
               ":" + std::to_string(s.steps);
        break;
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace retrofock::circuit
