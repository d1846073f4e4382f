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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "retrofock/kernels.hpp"

namespace retrofock::fock {

using kernels::cplx;

/// Tolerance for physics-level assertions (probabilities, device sums).
inline constexpr double kPhysicsTol = 1e-9;
/// Tolerance for pure linear-algebra identities (unitarity, trace).
inline constexpr double kLinalgTol = 1e-12;
/// Squared norms below this count as an impossible (probability-zero)
/// outcome rather than a renormalizable state.
inline constexpr double kDegenerateNormSq = 1e-12;
/// Enough for every scenario in this project: totals never exceed two
/// photons, so the truncated space is exact.
inline constexpr int kDefaultMaxPhotons = 2;

/// Whether a state propagates forward (predictive) or backward
/// (retrodictive) in time. Pure metadata: it never alters amplitudes,
/// only which evolution entry points accept the vector.
enum class Direction { Predictive, Retrodictive };

std::string_view direction_name(Direction d);

/// An ordered set of optical modes plus a bound on the total photon
/// number. The basis is every occupation tuple with sum <= the bound, in
/// lexicographic order, which fixes matrix layouts project-wide.
class ModeRegister {
 public:
  ModeRegister();  // zero modes: a single empty occupation tuple
  ModeRegister(std::vector<std::string> labels,
               int max_total_photons = kDefaultMaxPhotons);

  const std::vector<std::string>& labels() const { return labels_; }
  int max_total_photons() const { return max_total_; }
  std::size_t num_modes() const { return labels_.size(); }
  std::size_t dim() const { return basis_.size(); }

  const std::vector<std::vector<int>>& basis() const { return basis_; }
  const std::vector<int>& occupations(std::size_t index) const;
  std::size_t index_of(const std::vector<int>& occ) const;
  bool contains(const std::vector<int>& occ) const;

  bool has_mode(const std::string& label) const;
  std::size_t mode_position(const std::string& label) const;

  /// Sub-register over `keep`, which must be a subsequence of labels()
  /// (same relative order). The truncation bound carries over.
  ModeRegister subset(const std::vector<std::string>& keep) const;
  /// Labels not in `drop`, in register order.
  std::vector<std::string> complement(const std::vector<std::string>& drop) const;

  bool operator==(const ModeRegister& other) const;
  bool operator!=(const ModeRegister& other) const { return !(*this == other); }

 private:
  std::vector<std::string> labels_;
  int max_total_;
  std::vector<std::vector<int>> basis_;
  std::map<std::vector<int>, std::size_t> index_;

  void build_basis();
};

/// The register's canonical occupation-tuple list.
inline const std::vector<std::vector<int>>& enumerate_basis(
    const ModeRegister& reg) {
  return reg.basis();
}

/// A pure multimode state over a register's truncated Fock basis.
struct FockVector {
  ModeRegister reg;
  std::vector<cplx> amps;
  Direction direction = Direction::Predictive;

  FockVector() = default;
  FockVector(ModeRegister r, std::vector<cplx> a,
             Direction d = Direction::Predictive);

  static FockVector zero(ModeRegister r, Direction d = Direction::Predictive);
  static FockVector basis_state(ModeRegister r, const std::vector<int>& occ,
                                Direction d = Direction::Predictive);

  double norm_sq() const { return kernels::norm_sq(amps); }
  double norm() const;
  bool is_normalized(double tol = kPhysicsTol) const;

  FockVector normalized() const;  // throws on degenerate norm
  FockVector with_direction(Direction d) const;

  /// Same amplitudes under a different register of identical shape
  /// (dimension and photon bound must match).
  FockVector relabeled(ModeRegister other) const;

  cplx amp(const std::vector<int>& occ) const;
};

/// Dense operator over the register basis (unitaries, POM/PDO elements).
struct OperatorMatrix {
  ModeRegister reg;
  std::vector<cplx> m;  // row-major dim x dim

  OperatorMatrix() = default;
  OperatorMatrix(ModeRegister r, std::vector<cplx> matrix);

  static OperatorMatrix identity_on(ModeRegister r);
  static OperatorMatrix outer_product(const FockVector& ket,
                                      const FockVector& bra);

  std::size_t dim() const { return reg.dim(); }
  cplx at(std::size_t row, std::size_t col) const { return m[row * dim() + col]; }
  cplx& at(std::size_t row, std::size_t col) { return m[row * dim() + col]; }

  OperatorMatrix adjoint() const;
  /// this * other
  OperatorMatrix compose(const OperatorMatrix& other) const;
  std::vector<cplx> apply(std::span<const cplx> x) const;      // M x
  std::vector<cplx> apply_adjoint(std::span<const cplx> x) const;  // M^dagger x
  cplx trace() const;
  bool is_unitary(double tol = kLinalgTol) const;
};

struct DensityOperator {
  ModeRegister reg;
  std::vector<cplx> m;

  DensityOperator() = default;
  DensityOperator(ModeRegister r, std::vector<cplx> matrix);

  static DensityOperator zero(ModeRegister r);
  static DensityOperator from_pure(const FockVector& psi);

  std::size_t dim() const { return reg.dim(); }
  cplx at(std::size_t row, std::size_t col) const { return m[row * dim() + col]; }
  cplx trace() const;
  bool is_hermitian(double tol = kLinalgTol) const;

  /// this += weight |psi><psi|
  void accumulate_pure(double weight, const FockVector& psi);
};

/// <x|y>, conjugate-linear in x. Registers must match.
cplx inner_product(const FockVector& x, const FockVector& y);

/// |<x|y>| for normalized x, y: 1 iff equal up to a global phase.
double overlap_up_to_phase(const FockVector& x, const FockVector& y);

/// Result of projecting a bra onto part of a joint state. `norm` is the
/// length of the raw (unrenormalized) projection; its square is the
/// outcome probability when the joint state is normalized. `state` is
/// absent when the projection is degenerate (impossible outcome).
struct Projection {
  std::optional<FockVector> state;
  double norm = 0.0;

  bool impossible() const { return !state.has_value(); }
};

/// Contract conj(bra) against the bra's modes of `joint`, renormalize the
/// remainder. The bra's register must be a subsequence of the joint's;
/// the result lives on the complement (possibly the empty register) and
/// inherits the joint's direction. The computed global phase is kept.
Projection project_and_renormalize(const FockVector& bra,
                                   const FockVector& joint);

/// Trace out every mode not in `keep`.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep);

/// Rotate a state's global phase so its first nonzero amplitude (in basis
/// order) is real and positive. Used only for reporting; comparisons go
/// through overlap_up_to_phase.
FockVector canonical_phase(const FockVector& x);

}  // namespace retrofock::fock
