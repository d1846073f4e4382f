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

#include "retrofock/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "retrofock/linalg.hpp"

namespace retrofock::fock {

std::string_view direction_name(Direction d) {
  return d == Direction::Predictive ? "predictive" : "retrodictive";
}

// ---- ModeRegister -----------------------------------------------------------

ModeRegister::ModeRegister() : max_total_(kDefaultMaxPhotons) { build_basis(); }

ModeRegister::ModeRegister(std::vector<std::string> labels,
                           int max_total_photons)
    : labels_(std::move(labels)), max_total_(max_total_photons) {
  if (max_total_ < 0)
    throw std::invalid_argument("max_total_photons must be non-negative");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("empty mode label");
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate mode label: " + l);
  }
  build_basis();
}

void ModeRegister::build_basis() {
  basis_.clear();
  index_.clear();
  std::vector<int> cur(labels_.size(), 0);
  // Lexicographic enumeration of occupation tuples with sum <= max_total_.
  auto gen = [&](auto&& self, std::size_t mode, int remaining) -> void {
    if (mode == labels_.size()) {
      index_.emplace(cur, basis_.size());
      basis_.push_back(cur);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      cur[mode] = n;
      self(self, mode + 1, remaining - n);
    }
    cur[mode] = 0;
  };
  gen(gen, 0, max_total_);
}

const std::vector<int>& ModeRegister::occupations(std::size_t index) const {
  if (index >= basis_.size()) throw std::out_of_range("basis index");
  return basis_[index];
}

std::size_t ModeRegister::index_of(const std::vector<int>& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end())
    throw std::out_of_range("occupation tuple not in truncated basis");
  return it->second;
}

bool ModeRegister::contains(const std::vector<int>& occ) const {
  return index_.count(occ) != 0;
}

bool ModeRegister::has_mode(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t ModeRegister::mode_position(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw std::out_of_range("unknown mode: " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

ModeRegister ModeRegister::subset(const std::vector<std::string>& keep) const {
  std::size_t cursor = 0;
  for (const auto& l : keep) {
    while (cursor < labels_.size() && labels_[cursor] != l) ++cursor;
    if (cursor == labels_.size())
      throw std::invalid_argument(
          "subset labels must follow the register order: " + l);
    ++cursor;
  }
  return ModeRegister(keep, max_total_);
}

std::vector<std::string> ModeRegister::complement(
    const std::vector<std::string>& drop) const {
  std::vector<std::string> rest;
  for (const auto& l : labels_)
    if (std::find(drop.begin(), drop.end(), l) == drop.end())
      rest.push_back(l);
  return rest;
}

bool ModeRegister::operator==(const ModeRegister& other) const {
  return labels_ == other.labels_ && max_total_ == other.max_total_;
}

// ---- FockVector -------------------------------------------------------------

FockVector::FockVector(ModeRegister r, std::vector<cplx> a, Direction d)
    : reg(std::move(r)), amps(std::move(a)), direction(d) {
  if (amps.size() != reg.dim())
    throw std::invalid_argument("amplitude count does not match basis size");
}

FockVector FockVector::zero(ModeRegister r, Direction d) {
  std::size_t n = r.dim();
  return FockVector(std::move(r), std::vector<cplx>(n, cplx{0.0, 0.0}), d);
}

FockVector FockVector::basis_state(ModeRegister r, const std::vector<int>& occ,
                                   Direction d) {
  FockVector v = zero(std::move(r), d);
  v.amps[v.reg.index_of(occ)] = cplx{1.0, 0.0};
  return v;
}

double FockVector::norm() const { return std::sqrt(norm_sq()); }

bool FockVector::is_normalized(double tol) const {
  return std::abs(norm_sq() - 1.0) <= tol;
}

FockVector FockVector::normalized() const {
  double n2 = norm_sq();
  if (n2 < kDegenerateNormSq)
    throw std::domain_error("cannot normalize a (near-)zero state");
  FockVector out = *this;
  kernels::scale(cplx{1.0 / std::sqrt(n2), 0.0}, out.amps);
  return out;
}

FockVector FockVector::with_direction(Direction d) const {
  FockVector out = *this;
  out.direction = d;
  return out;
}

FockVector FockVector::relabeled(ModeRegister other) const {
  if (other.dim() != reg.dim() ||
      other.max_total_photons() != reg.max_total_photons())
    throw std::invalid_argument("relabeled register has a different shape");
  return FockVector(std::move(other), amps, direction);
}

cplx FockVector::amp(const std::vector<int>& occ) const {
  return amps[reg.index_of(occ)];
}

// ---- OperatorMatrix ---------------------------------------------------------

OperatorMatrix::OperatorMatrix(ModeRegister r, std::vector<cplx> matrix)
    : reg(std::move(r)), m(std::move(matrix)) {
  if (m.size() != reg.dim() * reg.dim())
    throw std::invalid_argument("matrix size does not match basis dimension");
}

OperatorMatrix OperatorMatrix::identity_on(ModeRegister r) {
  std::size_t d = r.dim();
  return OperatorMatrix(std::move(r), linalg::identity(d));
}

OperatorMatrix OperatorMatrix::outer_product(const FockVector& ket,
                                             const FockVector& bra) {
  if (ket.reg != bra.reg)
    throw std::invalid_argument("outer product needs matching registers");
  std::size_t d = ket.reg.dim();
  std::vector<cplx> m(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m[i * d + j] = ket.amps[i] * std::conj(bra.amps[j]);
  return OperatorMatrix(ket.reg, std::move(m));
}

OperatorMatrix OperatorMatrix::adjoint() const {
  std::vector<cplx> out(m.size());
  linalg::adjoint(m, dim(), dim(), out);
  return OperatorMatrix(reg, std::move(out));
}

OperatorMatrix OperatorMatrix::compose(const OperatorMatrix& other) const {
  if (reg != other.reg)
    throw std::invalid_argument("composing operators on different registers");
  std::size_t d = dim();
  std::vector<cplx> out(d * d);
  kernels::gemm(m, other.m, out, d, d, d);
  return OperatorMatrix(reg, std::move(out));
}

std::vector<cplx> OperatorMatrix::apply(std::span<const cplx> x) const {
  std::vector<cplx> y(dim());
  kernels::gemv(m, dim(), dim(), x, y);
  return y;
}

std::vector<cplx> OperatorMatrix::apply_adjoint(std::span<const cplx> x) const {
  std::vector<cplx> y(dim());
  kernels::gemv_adj(m, dim(), dim(), x, y);
  return y;
}

cplx OperatorMatrix::trace() const { return linalg::trace(m, dim()); }

bool OperatorMatrix::is_unitary(double tol) const {
  return linalg::is_unitary(m, dim(), tol);
}

// ---- DensityOperator --------------------------------------------------------

DensityOperator::DensityOperator(ModeRegister r, std::vector<cplx> matrix)
    : reg(std::move(r)), m(std::move(matrix)) {
  if (m.size() != reg.dim() * reg.dim())
    throw std::invalid_argument("matrix size does not match basis dimension");
}

DensityOperator DensityOperator::zero(ModeRegister r) {
  std::size_t d = r.dim();
  return DensityOperator(std::move(r),
                         std::vector<cplx>(d * d, cplx{0.0, 0.0}));
}

DensityOperator DensityOperator::from_pure(const FockVector& psi) {
  DensityOperator rho = zero(psi.reg);
  rho.accumulate_pure(1.0, psi);
  return rho;
}

cplx DensityOperator::trace() const { return linalg::trace(m, dim()); }

bool DensityOperator::is_hermitian(double tol) const {
  return linalg::is_hermitian(m, dim(), tol);
}

void DensityOperator::accumulate_pure(double weight, const FockVector& psi) {
  if (psi.reg != reg)
    throw std::invalid_argument("accumulating a state on a different register");
  std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i)
    kernels::axpy_conj(weight * psi.amps[i], psi.amps,
                       std::span<cplx>(m).subspan(i * d, d));
}

// ---- free operations --------------------------------------------------------

cplx inner_product(const FockVector& x, const FockVector& y) {
  if (x.reg != y.reg)
    throw std::invalid_argument("inner product across different registers");
  return kernels::dotc(x.amps, y.amps);
}

double overlap_up_to_phase(const FockVector& x, const FockVector& y) {
  if (x.reg != y.reg)
    throw std::invalid_argument("overlap across different registers");
  if (!x.is_normalized() || !y.is_normalized())
    throw std::invalid_argument("overlap_up_to_phase needs normalized states");
  double v = std::abs(kernels::dotc(x.amps, y.amps));
  return std::min(v, 1.0);
}

Projection project_and_renormalize(const FockVector& bra,
                                   const FockVector& joint) {
  const ModeRegister& jr = joint.reg;
  if (bra.reg.max_total_photons() != jr.max_total_photons())
    throw std::invalid_argument("photon bounds differ between bra and joint");
  // Validates that bra modes appear in joint order.
  jr.subset(bra.reg.labels());

  std::vector<std::string> rest = jr.complement(bra.reg.labels());
  ModeRegister target(rest, jr.max_total_photons());

  std::vector<std::size_t> bra_pos, rest_pos;
  for (const auto& l : bra.reg.labels()) bra_pos.push_back(jr.mode_position(l));
  for (const auto& l : rest) rest_pos.push_back(jr.mode_position(l));

  std::vector<cplx> out(target.dim(), cplx{0.0, 0.0});
  std::vector<int> occ_s(bra_pos.size()), occ_t(rest_pos.size());
  for (std::size_t k = 0; k < jr.dim(); ++k) {
    const std::vector<int>& occ = jr.occupations(k);
    for (std::size_t i = 0; i < bra_pos.size(); ++i) occ_s[i] = occ[bra_pos[i]];
    for (std::size_t i = 0; i < rest_pos.size(); ++i)
      occ_t[i] = occ[rest_pos[i]];
    out[target.index_of(occ_t)] +=
        std::conj(bra.amps[bra.reg.index_of(occ_s)]) * joint.amps[k];
  }

  double n2 = kernels::norm_sq(out);
  double n = std::sqrt(n2);
  if (n2 < kDegenerateNormSq) return Projection{std::nullopt, n};

  kernels::scale(cplx{1.0 / n, 0.0}, out);
  return Projection{FockVector(std::move(target), std::move(out),
                               joint.direction),
                    n};
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep) {
  if (keep.empty())
    throw std::invalid_argument("partial_trace needs a nonempty keep set");
  const ModeRegister& jr = rho.reg;
  ModeRegister target = jr.subset(keep);  // throws on unknown/misordered modes
  std::vector<std::string> traced = jr.complement(keep);

  std::vector<std::size_t> keep_pos, traced_pos;
  for (const auto& l : keep) keep_pos.push_back(jr.mode_position(l));
  for (const auto& l : traced) traced_pos.push_back(jr.mode_position(l));

  // Precompute each joint index's (kept tuple index, traced tuple) split.
  std::size_t jd = jr.dim();
  std::vector<std::size_t> kept_of(jd);
  std::vector<std::vector<int>> traced_of(jd);
  std::vector<int> occ_k(keep_pos.size());
  for (std::size_t k = 0; k < jd; ++k) {
    const std::vector<int>& occ = jr.occupations(k);
    for (std::size_t i = 0; i < keep_pos.size(); ++i) occ_k[i] = occ[keep_pos[i]];
    kept_of[k] = target.index_of(occ_k);
    std::vector<int> occ_t(traced_pos.size());
    for (std::size_t i = 0; i < traced_pos.size(); ++i)
      occ_t[i] = occ[traced_pos[i]];
    traced_of[k] = std::move(occ_t);
  }

  DensityOperator out = DensityOperator::zero(target);
  std::size_t td = target.dim();
  for (std::size_t i = 0; i < jd; ++i)
    for (std::size_t j = 0; j < jd; ++j)
      if (traced_of[i] == traced_of[j])
        out.m[kept_of[i] * td + kept_of[j]] += rho.m[i * jd + j];
  return out;
}

FockVector canonical_phase(const FockVector& x) {
  for (const cplx& a : x.amps) {
    double mag = std::abs(a);
    if (mag > 1e-14) {
      FockVector out = x;
      kernels::scale(std::conj(a) / mag, out.amps);
      return out;
    }
  }
  return x;
}

}  // namespace retrofock::fock
