// Copyright 2026 The defermion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "defermion/encoder.hpp"
#include "defermion/krylov.hpp"
#include "defermion/lattice.hpp"
#include "defermion/sector.hpp"

namespace defermion {

struct SpectrumResult {
    double ground_energy = 0.0;
    Eigen::VectorXcd ground_state;
    int degeneracy = 1;
    double residual = 0.0;
};

struct FermionEdOptions {
    /// mode_order[2*site + flavor] is the position of that mode in the
    /// occupation string; empty means the identity order.
    std::vector<std::size_t> mode_order;
    std::size_t max_modes = 16;
    LanczosOptions lanczos;
};

/// Hubbard model with U (n_u - 1/2)(n_d - 1/2) plus the number penalty, on the
/// full Fock space. The ground state is in the occupation basis with bit
/// mode_order[2*site + flavor].
SpectrumResult fermionic_ed(const LatticeSpec& spec, const ModelParams& params, const FermionEdOptions& opts = {});

/// Hamiltonian of the fermionic model as a sparse matrix in the occupation basis.
SparseMatrix fermionic_hamiltonian(const LatticeSpec& spec, const ModelParams& params,
                                   const std::vector<std::size_t>& mode_order = {});

enum class DeformedMode { Projected, Penalty };

struct DeformedEdOptions {
    double alpha_v = 20.0;
    std::size_t max_qubits = 14;
    LanczosOptions lanczos;
};

/// Ground state of the encoded Hamiltonian with penalties and number penalty.
/// Projected mode diagonalizes inside the joint +1 stabilizer eigenspace;
/// penalty mode adds -alpha_v (S_v - 1) per vertex on the full space. The
/// returned state is in the full qubit space of `layout`.
SpectrumResult deformed_ed(const QubitLayout& layout, const ModelParams& params, DeformedMode mode,
                           const DeformedEdOptions& opts = {});

/// Stabilizer sector of a layout: vertex and plaquette stabilizers.
SectorBasis layout_sector(const QubitLayout& layout, int max_log2_dim = 22);

/// Sum of |coeff| over non-identity terms plus |constant|.
double norm_bound(const PauliSum& h);

/// y = H x on the full qubit space, term by term.
void apply_pauli_sum(const PauliSum& h, const Eigen::VectorXcd& x, Eigen::VectorXcd& y);

/// Exact evolution inside a stabilizer sector.
class SectorEvolver {
   public:
    SectorEvolver(const SectorBasis& basis, const PauliSum& h);

    const SectorBasis& basis() const { return basis_; }
    const SparseMatrix& matrix() const { return matrix_; }
    double norm_bound() const { return norm_; }

    /// exp(-i H tau) v for a sector vector v.
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& v, double tau, const ExpmOptions& opts = {}) const;
    double energy(const Eigen::VectorXcd& v) const;

   private:
    SectorBasis basis_;
    SparseMatrix matrix_;
    double norm_;
};

/// exp(-i H tau) applied to a full-space state lying in the stabilizer
/// sector. Throws std::invalid_argument if the state has a component of norm
/// above 1e-10 outside the sector, or the sector exceeds 2^17.
Eigen::VectorXcd sector_projected_evolution(const QubitLayout& layout, const EncodedHamiltonian& h,
                                            const Eigen::VectorXcd& state, double tau);

/// Average over sites of <n_u n_d> for a full-space state of `layout`.
double double_occupancy(const QubitLayout& layout, const Eigen::VectorXcd& state);

}  // namespace defermion
