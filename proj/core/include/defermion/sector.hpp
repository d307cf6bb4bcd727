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
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "defermion/pauli.hpp"

namespace defermion {

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor, std::int64_t>;

/// Orthonormal basis of the joint +1 eigenspace of a commuting stabilizer set.
///
/// Diagonal stabilizers become parity constraints on basis states. The
/// remaining stabilizers generate a group G whose X masks must be linearly
/// independent; basis vector k is v_k = |G|^{-1/2} sum_g g |r_k>, with r_k
/// the orbit representative whose pivot bits are all clear.
class SectorBasis {
   public:
    /// Throws std::invalid_argument if the stabilizers do not commute, are
    /// not Hermitian, have dependent X masks, or the sector is larger than
    /// 2^max_log2_dim.
    SectorBasis(std::size_t num_qubits, const std::vector<PauliString>& stabilizers, int max_log2_dim = 22);

    std::size_t num_qubits() const { return n_; }
    std::size_t dim() const { return reps_.size(); }
    std::size_t group_size() const { return group_.size(); }
    const std::vector<std::uint64_t>& representatives() const { return reps_; }
    const std::vector<PauliString>& group() const { return group_; }

    bool satisfies_diagonal(std::uint64_t basis) const;
    std::optional<std::size_t> index_of(std::uint64_t rep) const;

    /// Representative s of basis state b and amplitude w with h|b> = w|s>
    /// for some h in G.
    std::pair<std::uint64_t, cplx> canonicalize(std::uint64_t basis) const;

    /// True iff p commutes with every stabilizer.
    bool is_symmetric(const PauliString& p) const;

    /// Matrix of a stabilizer-commuting operator in this basis.
    SparseMatrix matrix(const PauliSum& op) const;

    /// p applied to a sector vector; p must commute with every stabilizer.
    Eigen::VectorXcd apply(const PauliString& p, const Eigen::VectorXcd& v) const;

    /// <v|p|v>; zero when p anticommutes with a group generator.
    cplx expectation(const PauliString& p, const Eigen::VectorXcd& v) const;

    /// Full-space amplitudes of a sector vector.
    Eigen::VectorXcd embed(const Eigen::VectorXcd& v) const;
    /// Sector coordinates of a full-space vector; `outside` receives the norm
    /// of the component orthogonal to the sector.
    Eigen::VectorXcd project(const Eigen::VectorXcd& full, double* outside = nullptr) const;

    /// Sector vector of the normalized projection of the basis state |b>.
    Eigen::VectorXcd basis_state(std::uint64_t b) const;

   private:
    std::size_t n_ = 0;
    std::vector<PauliString> stabilizers_;
    std::vector<std::pair<std::uint64_t, bool>> diagonal_;  // (z mask, odd parity required)
    std::vector<PauliString> generators_;                   // reduced row echelon on X masks
    std::vector<int> pivots_;
    std::vector<PauliString> group_;
    std::vector<std::uint64_t> reps_;
};

}  // namespace defermion
