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
#include <string>
#include <vector>

#include "defermion/encoder.hpp"
#include "defermion/lattice.hpp"
#include "defermion/pauli.hpp"

namespace defermion {

/// RZ(phi) = diag(e^{-i phi/2}, e^{i phi/2}); RXM = Rx(-pi/2); RXP = Rx(pi/2).
enum class GateKind : std::uint8_t { H, X, CNOT, RZ, RXM, RXP, MEASURE };

struct Gate {
    GateKind kind = GateKind::H;
    std::uint32_t q0 = 0;
    std::uint32_t q1 = 0;  // CNOT target
    double angle = 0.0;    // RZ
    std::uint32_t bit = 0;  // MEASURE destination
    /// Classical bit that must read 1 for the gate to apply; -1 if unconditional.
    std::int32_t condition = -1;

    friend bool operator==(const Gate&, const Gate&) = default;
};

std::string to_string(GateKind k);

/// A gate range [begin, end) whose unitary is exactly exp(-i theta P).
struct PauliBlock {
    std::size_t begin = 0;
    std::size_t end = 0;
    PauliString op;
    double theta = 0.0;
};

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::size_t width, std::size_t classical_bits = 0) : width_(width), clbits_(classical_bits) {}

    std::size_t width() const { return width_; }
    std::size_t classical_bits() const { return clbits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<PauliBlock>& blocks() const { return blocks_; }
    std::size_t size() const { return gates_.size(); }
    bool is_unitary() const;

    Circuit& h(std::size_t q);
    Circuit& x(std::size_t q);
    Circuit& cnot(std::size_t control, std::size_t target);
    Circuit& rz(std::size_t q, double angle);
    Circuit& rxm(std::size_t q);
    Circuit& rxp(std::size_t q);
    Circuit& measure(std::size_t q, std::size_t bit);
    /// Appends g conditioned on classical bit `bit`.
    Circuit& conditional(std::size_t bit, Gate g);
    Circuit& add(const Gate& g);
    /// Appends all gates and blocks of `other`; widths and bit counts must fit.
    Circuit& append(const Circuit& other);
    /// Declares gates [b.begin, b.end) as one Pauli rotation.
    Circuit& add_block(const PauliBlock& b);
    /// Resizes the register; existing indices are kept.
    void widen(std::size_t width, std::size_t classical_bits);

    /// One line per gate: "KIND q0 [q1] [angle]", "MEASURE q bit",
    /// "IF bit KIND ...". Angles use %.17g.
    std::string to_text() const;

   private:
    void check_qubit(std::size_t q) const;

    std::size_t width_ = 0;
    std::size_t clbits_ = 0;
    std::vector<Gate> gates_;
    std::vector<PauliBlock> blocks_;
};

/// exp(-i c dt P) with basis layer, CNOT cascade onto the highest support
/// qubit, RZ(2 c dt (-1)^{#Y} s) where s = +-1 is the phase of P, and the
/// mirrored uncompute. Throws on identity letters or non-Hermitian P.
Circuit compile_propagator(double coeff, const PauliString& p, double dt);

/// First-order product over the terms in their stored order. Identity terms
/// only contribute a global phase and are skipped.
Circuit trotter_step(const EncodedHamiltonian& h, double dt);

/// Measures S onto `ancilla` (initially |0>) into classical bit `bit`;
/// outcome 1 means eigenvalue -1. The ancilla is returned to |0>.
Circuit stabilizer_measure_circuit(const PauliString& s, std::size_t ancilla, std::size_t bit, std::size_t width,
                                   std::size_t classical_bits);

/// Gates applying P (up to global phase) conditioned on `bit`.
Circuit conditional_pauli(const PauliString& p, std::size_t bit, std::size_t width, std::size_t classical_bits);

struct AdiabaticSchedule {
    int outer_steps = 100;
    int inner_steps = 10;
    double d_tau = 0.01;
    /// Ramp end point; 0 freezes the schedule at the initial Hamiltonian.
    double beta_final = 1.0;

    void validate() const;
    /// Linear ramp from 0 at step 0 to beta_final at the last step.
    double beta(int step) const;
    int total_steps() const { return outer_steps * inner_steps; }
};

/// On-site terms plus beta times the hopping terms, without penalties.
EncodedHamiltonian interpolated_hamiltonian(const QubitLayout& layout, const ModelParams& params, double beta);

Circuit adiabatic_circuit(const QubitLayout& layout, const ModelParams& params, const AdiabaticSchedule& schedule);

}  // namespace defermion
