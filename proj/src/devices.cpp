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

#include "retrofock/devices.hpp"

#include <cmath>
#include <stdexcept>

#include "retrofock/linalg.hpp"

namespace retrofock::devices {

using fock::cplx;
using fock::kPhysicsTol;

namespace {

template <typename Device>
void add_element(Device& d, std::string outcome_id, OperatorMatrix element) {
  if (d.elements.empty() && d.reg.num_modes() == 0 && element.reg.num_modes() != 0)
    d.reg = element.reg;
  if (element.reg != d.reg)
    throw std::invalid_argument("device element on a different register");
  if (d.has(outcome_id))
    throw std::invalid_argument("duplicate outcome id: " + outcome_id);
  d.elements.emplace_back(std::move(outcome_id), std::move(element));
}

template <typename Device>
const OperatorMatrix& find_element(const Device& d, const std::string& id) {
  for (const auto& [key, el] : d.elements)
    if (key == id) return el;
  throw std::out_of_range("unknown outcome id: " + id);
}

template <typename Device>
std::vector<std::string> list_ids(const Device& d) {
  std::vector<std::string> ids;
  ids.reserve(d.elements.size());
  for (const auto& [key, el] : d.elements) ids.push_back(key);
  return ids;
}

void check_elements_nonnegative(
    const std::vector<std::pair<std::string, OperatorMatrix>>& elements,
    std::vector<Violation>& out) {
  for (const auto& [id, el] : elements) {
    std::size_t d = el.dim();
    if (!linalg::is_hermitian(el.m, d, kPhysicsTol)) {
      out.push_back({id, "element is not Hermitian", 0.0, kPhysicsTol});
      continue;
    }
    double min_ev = linalg::min_hermitian_eigenvalue(el.m, d);
    if (min_ev < -kPhysicsTol)
      out.push_back(
          {id, "element has a negative eigenvalue", min_ev, -kPhysicsTol});
  }
}

}  // namespace

void MeasurementDevice::add(std::string outcome_id, OperatorMatrix element) {
  add_element(*this, std::move(outcome_id), std::move(element));
}
bool MeasurementDevice::has(const std::string& outcome_id) const {
  for (const auto& [key, el] : elements)
    if (key == outcome_id) return true;
  return false;
}
const OperatorMatrix& MeasurementDevice::element(
    const std::string& outcome_id) const {
  return find_element(*this, outcome_id);
}
std::vector<std::string> MeasurementDevice::outcome_ids() const {
  return list_ids(*this);
}

void PreparationDevice::add(std::string outcome_id, OperatorMatrix element) {
  add_element(*this, std::move(outcome_id), std::move(element));
}
bool PreparationDevice::has(const std::string& outcome_id) const {
  for (const auto& [key, el] : elements)
    if (key == outcome_id) return true;
  return false;
}
const OperatorMatrix& PreparationDevice::element(
    const std::string& outcome_id) const {
  return find_element(*this, outcome_id);
}
std::vector<std::string> PreparationDevice::outcome_ids() const {
  return list_ids(*this);
}

std::vector<Violation> validate(const MeasurementDevice& d) {
  std::vector<Violation> out;
  check_elements_nonnegative(d.elements, out);

  std::size_t dim = d.reg.dim();
  std::vector<cplx> sum(dim * dim, cplx{0.0, 0.0});
  for (const auto& [id, el] : d.elements)
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += el.m[k];
  double dev = linalg::max_abs_diff(sum, linalg::identity(dim));
  if (dev > kPhysicsTol)
    out.push_back({"", "POM elements do not sum to the identity", dev,
                   kPhysicsTol});
  return out;
}

std::vector<Violation> validate(const PreparationDevice& d) {
  std::vector<Violation> out;
  check_elements_nonnegative(d.elements, out);

  cplx total{0.0, 0.0};
  for (const auto& [id, el] : d.elements) total += el.trace();
  if (std::abs(total - cplx{1.0, 0.0}) > kPhysicsTol)
    out.push_back({"", "PDO traces do not sum to one",
                   std::abs(total - cplx{1.0, 0.0}), kPhysicsTol});
  return out;
}

double prior_probability(const PreparationDevice& d,
                         const std::string& outcome_id) {
  return d.element(outcome_id).trace().real();
}

OperatorMatrix pure_preparation(const FockVector& state, double weight) {
  if (!state.is_normalized())
    throw std::invalid_argument("pure_preparation needs a normalized state");
  if (weight <= 0.0 || weight > 1.0)
    throw std::invalid_argument("preparation weight must be in (0, 1]");
  OperatorMatrix el = OperatorMatrix::outer_product(state, state);
  kernels::scale(cplx{weight, 0.0}, el.m);
  return el;
}

namespace {

OperatorMatrix conjugate_forward(const OperatorMatrix& u,
                                 const OperatorMatrix& x) {
  // U X U^dagger
  std::size_t d = u.dim();
  std::vector<cplx> tmp(d * d), out(d * d);
  kernels::gemm(u.m, x.m, tmp, d, d, d);
  kernels::gemm_adj_right(tmp, u.m, out, d, d, d);
  return OperatorMatrix(x.reg, std::move(out));
}

OperatorMatrix conjugate_backward(const OperatorMatrix& u,
                                  const OperatorMatrix& x) {
  // U^dagger X U
  std::size_t d = u.dim();
  std::vector<cplx> tmp(d * d), out(d * d);
  kernels::gemm_adj_left(u.m, x.m, tmp, d, d, d);
  kernels::gemm(tmp, u.m, out, d, d, d);
  return OperatorMatrix(x.reg, std::move(out));
}

}  // namespace

PreparationDevice combine_with_unitary(const PreparationDevice& d,
                                       const OperatorMatrix& u) {
  if (u.reg != d.reg)
    throw std::invalid_argument("unitary register differs from device");
  PreparationDevice out;
  out.reg = d.reg;
  for (const auto& [id, el] : d.elements)
    out.elements.emplace_back(id, conjugate_forward(u, el));
  return out;
}

MeasurementDevice combine_with_unitary(const MeasurementDevice& d,
                                       const OperatorMatrix& u) {
  if (u.reg != d.reg)
    throw std::invalid_argument("unitary register differs from device");
  MeasurementDevice out;
  out.reg = d.reg;
  for (const auto& [id, el] : d.elements)
    out.elements.emplace_back(id, conjugate_backward(u, el));
  return out;
}

MeasurementDevice photon_counting_pom(
    const ModeRegister& reg,
    const std::vector<std::pair<std::string, std::string>>& counters,
    std::optional<int> max_count) {
  if (counters.empty())
    throw std::invalid_argument("photon_counting_pom needs counters");
  std::vector<std::size_t> positions;
  for (const auto& [mode, name] : counters)
    positions.push_back(reg.mode_position(mode));

  // Enumerate joint count patterns over the counted modes. Every basis
  // state falls under exactly one pattern, so the projectors sum to the
  // identity on the truncated space by construction.
  std::vector<std::vector<int>> patterns;
  std::vector<int> cur(counters.size(), 0);
  auto gen = [&](auto&& self, std::size_t k, int remaining) -> void {
    if (k == counters.size()) {
      patterns.push_back(cur);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      cur[k] = n;
      self(self, k + 1, remaining - n);
    }
    cur[k] = 0;
  };
  gen(gen, 0, reg.max_total_photons());

  std::size_t d = reg.dim();
  MeasurementDevice device;
  device.reg = reg;
  std::vector<cplx> overflow(d * d, cplx{0.0, 0.0});
  bool have_overflow = false;

  for (const auto& pattern : patterns) {
    bool capped = false;
    if (max_count)
      for (int n : pattern)
        if (n > *max_count) capped = true;

    std::vector<cplx> m(d * d, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < d; ++k) {
      const std::vector<int>& occ = reg.occupations(k);
      bool match = true;
      for (std::size_t c = 0; c < positions.size(); ++c)
        if (occ[positions[c]] != pattern[c]) match = false;
      if (match) m[k * d + k] = cplx{1.0, 0.0};
    }

    if (capped) {
      for (std::size_t k = 0; k < m.size(); ++k) overflow[k] += m[k];
      have_overflow = true;
      continue;
    }

    std::string id;
    for (std::size_t c = 0; c < counters.size(); ++c) {
      if (c > 0) id += ',';
      id += counters[c].second + "=" + std::to_string(pattern[c]);
    }
    device.add(std::move(id), OperatorMatrix(reg, std::move(m)));
  }

  if (have_overflow)
    device.add("overflow", OperatorMatrix(reg, std::move(overflow)));
  return device;
}

PreparationDevice single_outcome_preparation(const std::string& outcome_id,
                                             const FockVector& state) {
  PreparationDevice d;
  d.reg = state.reg;
  d.add(outcome_id, pure_preparation(state, 1.0));
  return d;
}

}  // namespace retrofock::devices
