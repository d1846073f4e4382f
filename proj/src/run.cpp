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

#include "retrofock/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "retrofock/optics.hpp"
#include "retrofock/scenarios.hpp"

namespace retrofock::circuit {

using fock::Direction;
using fock::FockVector;
using fock::ModeRegister;
using optics::OpticalElement;

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_complex(cplx v) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", v.real(), v.imag());
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_csv(const Table& t) {
  std::string out;
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (k) out += ',';
    out += csv_field(t.columns[k]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += csv_field(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const Table& t) {
  nlohmann::json j;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j.dump(2) + "\n";
}

Table parse_json_table(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    Table t;
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed table JSON: ") + e.what());
  }
}

std::string emit(const Table& t, TableFormat format) {
  return format == TableFormat::Csv ? emit_csv(t) : emit_json(t);
}

namespace {

struct Analysis {
  std::vector<Diagnostic> diags;

  void error(SourcePos pos, std::string msg) {
    diags.push_back({pos.line == 0 ? 1 : pos.line, pos.col == 0 ? 1 : pos.col,
                     std::move(msg)});
  }
  bool ok() const { return diags.empty(); }
};

const PrepareStmt* find_prepare(const CircuitSpec& spec,
                                const std::string& mode) {
  for (const PrepareStmt& p : spec.prepares)
    if (p.mode == mode) return &p;
  return nullptr;
}

const DetectStmt* find_detector(const CircuitSpec& spec,
                                const std::string& name) {
  for (const DetectStmt& d : spec.detects)
    if (d.name == name) return &d;
  return nullptr;
}

std::vector<const BeamSplitterStmt*> beamsplitters(const CircuitSpec& spec) {
  std::vector<const BeamSplitterStmt*> out;
  for (const ElementStmt& e : spec.elements)
    if (const auto* bs = std::get_if<BeamSplitterStmt>(&e)) out.push_back(bs);
  return out;
}

// ---- forward scenario -------------------------------------------------------

Table run_forward(const CircuitSpec& spec, Analysis& a) {
  int total = 0;
  for (const PrepareStmt& p : spec.prepares) {
    if (p.kind == PrepareStmt::Kind::Photons) total += p.photons;
    if (p.kind == PrepareStmt::Kind::Superpose) total += 1;
  }
  ModeRegister reg(spec.modes, std::max(fock::kDefaultMaxPhotons, total));

  // Product of the per-mode preparations; unprepared modes are vacuum.
  FockVector state = FockVector::zero(reg, Direction::Predictive);
  for (std::size_t k = 0; k < reg.dim(); ++k) {
    const std::vector<int>& occ = reg.occupations(k);
    cplx amp{1.0, 0.0};
    for (std::size_t m = 0; m < spec.modes.size() && amp != cplx{0.0, 0.0};
         ++m) {
      const PrepareStmt* p = find_prepare(spec, spec.modes[m]);
      int n = occ[m];
      if (p == nullptr || p->kind == PrepareStmt::Kind::Vacuum) {
        if (n != 0) amp = 0.0;
      } else if (p->kind == PrepareStmt::Kind::Photons) {
        if (n != p->photons) amp = 0.0;
      } else {
        amp *= n == 0 ? p->a0 : (n == 1 ? p->a1 : cplx{0.0, 0.0});
      }
    }
    state.amps[k] = amp;
  }

  optics::UnitarySchedule schedule;
  for (const ElementStmt& e : spec.elements) {
    if (const auto* bs = std::get_if<BeamSplitterStmt>(&e))
      schedule.add(OpticalElement::beam_splitter(bs->mode1, bs->mode2,
                                                 bs->reflectivity));
    else if (const auto* ph = std::get_if<PhaseStmt>(&e))
      schedule.add(OpticalElement::phase_shifter(ph->mode, ph->angle.value));
    else if (const auto* pr = std::get_if<PropagateStmt>(&e))
      schedule.add(OpticalElement::propagation(pr->mode, pr->wavelengths));
  }
  FockVector out =
      optics::apply_forward(optics::compose_schedule(schedule, reg), state);

  Table t;
  t.columns = {"state", "amplitude"};
  for (std::size_t k = 0; k < reg.dim(); ++k) {
    if (std::abs(out.amps[k]) <= 1e-12) continue;
    const std::vector<int>& occ = reg.occupations(k);
    std::string label = "|";
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (m) label += ',';
      label += std::to_string(occ[m]);
    }
    label += ">";
    t.rows.push_back({label, format_complex(out.amps[k])});
  }
  (void)a;
  return t;
}

// ---- backward-channel scenario ----------------------------------------------

struct ChannelShape {
  cplx a0, a1;
  double fraction = 0.0;
};

std::optional<ChannelShape> match_channel(const CircuitSpec& spec,
                                          Analysis& a) {
  SourcePos anchor = spec.scenario ? spec.scenario->pos : SourcePos{1, 1};
  auto bss = beamsplitters(spec);
  if (bss.size() != 2) {
    a.error(anchor, "backward-channel needs exactly two beamsplitters");
    return std::nullopt;
  }
  for (const auto* bs : bss)
    if (bs->reflectivity != 0.5) {
      a.error(bs->pos, "backward-channel is defined for 50/50 splitters");
      return std::nullopt;
    }

  // Exactly one shared mode: the path connecting the two splitters.
  std::vector<std::string> first{bss[0]->mode1, bss[0]->mode2};
  std::vector<std::string> second{bss[1]->mode1, bss[1]->mode2};
  std::vector<std::string> shared;
  for (const auto& m : first)
    if (m == second[0] || m == second[1]) shared.push_back(m);
  if (shared.size() != 1) {
    a.error(bss[1]->pos,
            shared.size() == 2
                ? "the two splitters form a loop; use scenario cycle"
                : "the two splitters must share exactly one mode");
    return std::nullopt;
  }
  std::string b = shared[0];
  std::string c = first[0] == b ? first[1] : first[0];
  std::string amode = second[0] == b ? second[1] : second[0];

  ChannelShape shape;
  const PrepareStmt* pa = find_prepare(spec, amode);
  if (pa == nullptr || pa->kind != PrepareStmt::Kind::Superpose) {
    a.error(pa ? pa->pos : anchor,
            "backward-channel needs prepare " + amode + " superpose ...");
    return std::nullopt;
  }
  shape.a0 = pa->a0;
  shape.a1 = pa->a1;

  const PrepareStmt* pb = find_prepare(spec, b);
  if (pb != nullptr && pb->kind != PrepareStmt::Kind::Vacuum) {
    a.error(pb->pos, "the shared mode must start in vacuum");
    return std::nullopt;
  }
  const PrepareStmt* pc = find_prepare(spec, c);
  if (pc == nullptr || pc->kind != PrepareStmt::Kind::Photons ||
      pc->photons != 1) {
    a.error(pc ? pc->pos : anchor,
            "backward-channel needs prepare " + c + " photons=1");
    return std::nullopt;
  }

  const DetectStmt* d0 = find_detector(spec, "D0");
  const DetectStmt* d1 = find_detector(spec, "D1");
  if (d0 == nullptr || d1 == nullptr || spec.detects.size() != 2 ||
      d0->mode != amode || d1->mode != b) {
    a.error(anchor, "backward-channel needs detect " + amode + " D0 and detect " +
                        b + " D1");
    return std::nullopt;
  }

  for (const ElementStmt& e : spec.elements) {
    if (const auto* ph = std::get_if<PhaseStmt>(&e)) {
      a.error(ph->pos, "backward-channel has no phase shifter");
      return std::nullopt;
    }
    if (const auto* pr = std::get_if<PropagateStmt>(&e)) {
      if (pr->mode != b) {
        a.error(pr->pos, "only the shared mode may carry propagation");
        return std::nullopt;
      }
      shape.fraction += pr->wavelengths;
    }
  }
  shape.fraction -= std::floor(shape.fraction);

  // The parser tolerates 1e-9 normalization error; the analysis is exact.
  double n = std::sqrt(std::norm(shape.a0) + std::norm(shape.a1));
  shape.a0 /= n;
  shape.a1 /= n;
  return shape;
}

Table channel_table(const scenarios::BackwardChannelReport& report) {
  Table t;
  t.columns = {"outcome", "probability", "out_0", "out_1", "out_2"};
  for (const auto& rec : report.outcomes) {
    std::vector<std::string> row{rec.outcome_id, format_real(rec.probability)};
    if (rec.retro_out) {
      for (const cplx& amp : rec.retro_out->amps)
        row.push_back(format_complex(amp));
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---- cycle / sweep scenarios --------------------------------------------------

struct CycleShape {
  double phi = 0.0;
};

std::optional<CycleShape> match_cycle(const CircuitSpec& spec, Analysis& a) {
  SourcePos anchor = spec.scenario ? spec.scenario->pos : SourcePos{1, 1};
  auto bss = beamsplitters(spec);
  if (bss.size() != 2) {
    a.error(anchor, "cycle needs exactly two beamsplitters");
    return std::nullopt;
  }
  for (const auto* bs : bss)
    if (bs->reflectivity != 0.5) {
      a.error(bs->pos, "cycle is defined for 50/50 splitters");
      return std::nullopt;
    }
  auto same_pair = [&]() {
    return (bss[0]->mode1 == bss[1]->mode1 && bss[0]->mode2 == bss[1]->mode2) ||
           (bss[0]->mode1 == bss[1]->mode2 && bss[0]->mode2 == bss[1]->mode1);
  };
  if (!same_pair()) {
    a.error(bss[1]->pos, "cycle splitters must close on the same two modes");
    return std::nullopt;
  }

  const DetectStmt* d0 = find_detector(spec, "D0");
  const DetectStmt* d1 = find_detector(spec, "D1");
  if (d0 == nullptr || d1 == nullptr || spec.detects.size() != 2) {
    a.error(anchor, "cycle needs detectors named D0 and D1");
    return std::nullopt;
  }
  const std::string& direct = d1->mode;    // straight path
  const std::string& feedback = d0->mode;  // carries the rejuvenator
  auto on_splitter = [&](const std::string& m) {
    return m == bss[0]->mode1 || m == bss[0]->mode2;
  };
  if (direct == feedback || !on_splitter(direct) || !on_splitter(feedback)) {
    a.error(d1->pos, "detectors must sit on the two splitter modes");
    return std::nullopt;
  }

  const PrepareStmt* pd = find_prepare(spec, direct);
  if (pd != nullptr && pd->kind != PrepareStmt::Kind::Vacuum) {
    a.error(pd->pos, "the direct mode must start in vacuum");
    return std::nullopt;
  }
  const PrepareStmt* pf = find_prepare(spec, feedback);
  if (pf == nullptr || pf->kind != PrepareStmt::Kind::Photons ||
      pf->photons != 1) {
    a.error(pf ? pf->pos : anchor,
            "cycle needs prepare " + feedback + " photons=1");
    return std::nullopt;
  }

  CycleShape shape;
  for (const ElementStmt& e : spec.elements) {
    if (const auto* ph = std::get_if<PhaseStmt>(&e)) {
      if (ph->mode != feedback) {
        a.error(ph->pos, "the rejuvenator phase must sit on the feedback mode");
        return std::nullopt;
      }
      shape.phi += ph->angle.value;
    }
    if (const auto* pr = std::get_if<PropagateStmt>(&e)) {
      if (pr->wavelengths != std::floor(pr->wavelengths)) {
        a.error(pr->pos,
                "cycle paths must be an integer number of wavelengths");
        return std::nullopt;
      }
    }
  }
  return shape;
}

void append_cycle_rows(Table& t, const scenarios::CycleReport& report,
                       bool sweep_layout) {
  for (const auto& rec : report.outcomes) {
    if (sweep_layout && !(rec.d0 == 0 && rec.d1 == 1)) continue;
    std::vector<std::string> row{format_real(report.phi), rec.outcome_id};
    if (!sweep_layout) row.push_back(format_complex(rec.overlap));
    row.push_back(format_real(rec.cycle_probability));
    row.push_back(format_real(rec.oracle_probability));
    row.push_back(std::string(scenarios::verdict_name(rec.verdict)));
    t.rows.push_back(std::move(row));
  }
}

Table cycle_table(double phi) {
  Table t;
  t.columns = {"phi",               "outcome",
               "overlap",           "cycle_probability",
               "oracle_probability", "verdict"};
  append_cycle_rows(t, scenarios::cycle_analysis({phi}), false);
  return t;
}

Table sweep_table(const SweepSpec& sweep) {
  Table t;
  t.columns = {"phi", "outcome", "cycle_probability", "oracle_probability",
               "verdict"};
  for (int k = 0; k < sweep.steps; ++k) {
    double phi = sweep.start + (sweep.end - sweep.start) * k /
                                   static_cast<double>(sweep.steps - 1);
    append_cycle_rows(t, scenarios::cycle_analysis({phi}), true);
  }
  return t;
}

}  // namespace

RunResult run(const CircuitSpec& spec, const std::optional<SweepSpec>& sweep) {
  RunResult res;
  Analysis a;

  if (!spec.scenario) {
    res.diagnostics.push_back({1, 1, "missing scenario directive"});
    return res;
  }
  using Kind = ScenarioStmt::Kind;
  Kind kind = spec.scenario->kind;

  if (sweep && kind != Kind::Cycle && kind != Kind::Sweep) {
    res.diagnostics.push_back(
        {spec.scenario->pos.line, spec.scenario->pos.col,
         "a phi sweep applies to cycle scenarios only"});
    return res;
  }

  switch (kind) {
    case Kind::Forward:
      res.table = run_forward(spec, a);
      break;
    case Kind::BackwardChannel: {
      auto shape = match_channel(spec, a);
      if (shape) {
        scenarios::TimeMachineConfig config;
        config.a0 = shape->a0;
        config.a1 = shape->a1;
        config.path_b_wavelength_fraction = shape->fraction;
        res.table = channel_table(scenarios::backward_channel(config));
      }
      break;
    }
    case Kind::Cycle: {
      auto shape = match_cycle(spec, a);
      if (shape) {
        if (sweep)
          res.table = sweep_table(*sweep);
        else
          res.table = cycle_table(shape->phi);
      }
      break;
    }
    case Kind::Sweep: {
      auto shape = match_cycle(spec, a);
      if (shape) res.table = sweep_table(sweep ? *sweep : *spec.scenario->sweep);
      break;
    }
  }

  res.diagnostics = std::move(a.diags);
  if (!res.diagnostics.empty()) res.table.reset();
  return res;
}

}  // namespace retrofock::circuit
