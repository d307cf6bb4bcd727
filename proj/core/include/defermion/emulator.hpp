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
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "defermion/circuit.hpp"
#include "defermion/pauli.hpp"

namespace defermion {

/// Runtime failure of a physical protocol, such as an impossible post-selection.
class ProtocolError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Largest register the emulator accepts.
inline constexpr std::size_t kMaxStateQubits = 30;

/// Dense 2^n statevector; qubit q is bit q of the amplitude index.
class StateVector {
   public:
    explicit StateVector(std::size_t n, std::uint64_t seed = 0);
    StateVector(const Eigen::VectorXcd& amplitudes, std::uint64_t seed = 0);

    std::size_t num_qubits() const { return n_; }
    const Eigen::VectorXcd& amplitudes() const { return amp_; }
    Eigen::VectorXcd& amplitudes() { return amp_; }
    double norm() const;

    void apply_h(std::size_t q);
    void apply_x(std::size_t q);
    void apply_cnot(std::size_t control, std::size_t target);
    void apply_rz(std::size_t q, double angle);
    void apply_rx(std::size_t q, double angle);
    /// exp(-i theta P) in one pass.
    void apply_pauli_rotation(const PauliString& p, double theta);
    /// Exact action of P, including its phase.
    void apply_pauli(const PauliString& p);

    double probability(std::size_t q, int outcome) const;
    /// Samples q with the internal RNG and collapses.
    int measure(std::size_t q);
    /// Deterministic post-selection. Throws ProtocolError("post-selection
    /// impossible ...") when the outcome probability is at most 1e-12.
    void project(std::size_t q, int outcome);

    cplx expectation(const PauliString& p) const;
    /// Throws std::invalid_argument for a non-Hermitian sum.
    double expectation(const PauliSum& obs) const;

    /// Appends a qubit in |0> as the new highest index.
    void add_qubit();
    /// Removes the highest qubit, which must be in |0> within 1e-10.
    void remove_qubit();

   private:
    void check(std::size_t q) const;

    std::size_t n_ = 0;
    Eigen::VectorXcd amp_;
    std::mt19937_64 rng_;
};

struct RunOptions {
    /// Execute annotated Pauli blocks as single rotations.
    bool fuse_blocks = false;
};

/// Applies the circuit in order; returns the classical register.
std::vector<std::uint8_t> run(const Circuit& circuit, StateVector& state, const RunOptions& opts = {});

/// Dense unitary of a unitary-only circuit (test support).
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit, std::size_t cap = 10);

}  // namespace defermion
