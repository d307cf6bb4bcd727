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

#include "defermion/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace defermion {

std::string to_string(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::RZ:
            return "RZ";
        case GateKind::RXM:
            return "RXM";
        case GateKind::RXP:
            return "RXP";
        case GateKind::MEASURE:
            return "MEASURE";
    }
    return "?";
}

bool Circuit::is_unitary() const {
    for (const auto& g : gates_) {
        if (g.kind == GateKind::MEASURE || g.condition >= 0) {
            return false;
        }
    }
    return true;
}

void Circuit::check_qubit(std::size_t q) const {
    if (q >= width_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " outside circuit width " + std::to_string(width_));
    }
}

Circuit& Circuit::add(const Gate& g) {
    check_qubit(g.q0);
    if (g.kind == GateKind::CNOT) {
        check_qubit(g.q1);
        if (g.q0 == g.q1) {
            throw std::invalid_argument("CNOT control equals target");
        }
    }
    if (g.kind == GateKind::RZ && !std::isfinite(g.angle)) {
        throw std::invalid_argument("RZ angle is not finite");
    }
    if (g.kind == GateKind::MEASURE && g.bit >= clbits_) {
        throw std::out_of_range("classical bit " + std::to_string(g.bit) + " outside register");
    }
    if (g.condition >= 0 && static_cast<std::size_t>(g.condition) >= clbits_) {
        throw std::out_of_range("condition bit " + std::to_string(g.condition) + " outside register");
    }
    gates_.push_back(g);
    return *this;
}

Circuit& Circuit::h(std::size_t q) {
    return add({GateKind::H, static_cast<std::uint32_t>(q)});
}

Circuit& Circuit::x(std::size_t q) {
    return add({GateKind::X, static_cast<std::uint32_t>(q)});
}

Circuit& Circuit::cnot(std::size_t control, std::size_t target) {
    return add({GateKind::CNOT, static_cast<std::uint32_t>(control), static_cast<std::uint32_t>(target)});
}

Circuit& Circuit::rz(std::size_t q, double angle) {
    return add({GateKind::RZ, static_cast<std::uint32_t>(q), 0, angle});
}

Circuit& Circuit::rxm(std::size_t q) {
    return add({GateKind::RXM, static_cast<std::uint32_t>(q)});
}

Circuit& Circuit::rxp(std::size_t q) {
    return add({GateKind::RXP, static_cast<std::uint32_t>(q)});
}

Circuit& Circuit::measure(std::size_t q, std::size_t bit) {
    return add({GateKind::MEASURE, static_cast<std::uint32_t>(q), 0, 0.0, static_cast<std::uint32_t>(bit)});
}

Circuit& Circuit::conditional(std::size_t bit, Gate g) {
    if (g.kind == GateKind::MEASURE) {
        throw std::invalid_argument("conditional measurement is not supported");
    }
    g.condition = static_cast<std::int32_t>(bit);
    return add(g);
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.width_ > width_ || other.clbits_ > clbits_) {
        throw std::invalid_argument("appended circuit does not fit the register");
    }
    std::size_t offset = gates_.size();
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    for (PauliBlock b : other.blocks_) {
        b.begin += offset;
        b.end += offset;
        if (b.op.num_qubits() != width_) {
            PauliString wide(width_, b.op.x_mask(), b.op.z_mask(), b.op.phase_exponent());
            b.op = wide;
        }
        blocks_.push_back(b);
    }
    return *this;
}

Circuit& Circuit::add_block(const PauliBlock& b) {
    if (b.begin > b.end || b.end > gates_.size() || b.op.num_qubits() != width_) {
        throw std::invalid_argument("invalid Pauli block");
    }
    blocks_.push_back(b);
    return *this;
}

void Circuit::widen(std::size_t width, std::size_t classical_bits) {
    if (width < width_ || classical_bits < clbits_) {
        throw std::invalid_argument("widen cannot shrink a circuit");
    }
    width_ = width;
    clbits_ = classical_bits;
    for (auto& b : blocks_) {
        b.op = PauliString(width_, b.op.x_mask(), b.op.z_mask(), b.op.phase_exponent());
    }
}

std::string Circuit::to_text() const {
    std::string out;
    char buf[64];
    for (const auto& g : gates_) {
        if (g.condition >= 0) {
            out += "IF " + std::to_string(g.condition) + " ";
        }
        out += to_string(g.kind) + " " + std::to_string(g.q0);
        if (g.kind == GateKind::CNOT) {
            out += " " + std::to_string(g.q1);
        } else if (g.kind == GateKind::RZ) {
            std::snprintf(buf, sizeof(buf), " %.17g", g.angle);
            out += buf;
        } else if (g.kind == GateKind::MEASURE) {
            out += " " + std::to_string(g.bit);
        }
        out += "\n";
    }
    return out;
}

Circuit compile_propagator(double coeff, const PauliString& p, double dt) {
    if (p.is_identity_letters()) {
        throw std::invalid_argument("cannot compile an identity string; it is a global phase");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("propagator string must be Hermitian: " + p.to_string());
    }
    std::size_t n = p.num_qubits();
    std::vector<std::size_t> support;
    for (std::size_t q = 0; q < n; ++q) {
        if ((p.support() >> q) & 1) {
            support.push_back(q);
        }
    }
    std::size_t target = support.back();
    double sign = p.phase_exponent() == 2 ? -1.0 : 1.0;
    if (p.num_y() & 1) {
        sign = -sign;
    }
    Circuit c(n);
    for (std::size_t q : support) {
        char l = p.letter(q);
        if (l == 'X') {
            c.h(q);
        } else if (l == 'Y') {
            c.rxm(q);
        }
    }
    for (std::size_t q : support) {
        if (q != target) {
            c.cnot(q, target);
        }
    }
    c.rz(target, 2.0 * coeff * dt * sign);
    for (auto it = support.rbegin(); it != support.rend(); ++it) {
        if (*it != target) {
            c.cnot(*it, target);
        }
    }
    for (std::size_t q : support) {
        char l = p.letter(q);
        if (l == 'X') {
            c.h(q);
        } else if (l == 'Y') {
            c.rxp(q);
        }
    }
    c.add_block({0, c.size(), p.with_phase(0), coeff * dt * (p.phase_exponent() == 2 ? -1.0 : 1.0)});
    return c;
}

Circuit trotter_step(const EncodedHamiltonian& h, double dt) {
    Circuit c(h.num_qubits);
    for (const auto& t : h.terms) {
        if (t.op.is_identity_letters()) {
            continue;
        }
        c.append(compile_propagator(t.coeff, t.op, dt));
    }
    return c;
}

Circuit stabilizer_measure_circuit(const PauliString& s, std::size_t ancilla, std::size_t bit, std::size_t width,
                                   std::size_t classical_bits) {
    if (!s.is_hermitian()) {
        throw std::invalid_argument("stabilizer must be Hermitian: " + s.to_string());
    }
    if (s.is_identity_letters()) {
        throw std::invalid_argument("cannot measure the identity");
    }
    if (ancilla < s.num_qubits() && ((s.support() >> ancilla) & 1)) {
        throw std::invalid_argument("ancilla lies in the stabilizer support");
    }
    Circuit c(width, classical_bits);
    std::vector<std::size_t> support;
    for (std::size_t q = 0; q < s.num_qubits(); ++q) {
        if ((s.support() >> q) & 1) {
            support.push_back(q);
        }
    }
    bool negative = s.phase_exponent() == 2;
    if (s.num_y() & 1) {
        negative = !negative;
    }
    for (std::size_t q : support) {
        char l = s.letter(q);
        if (l == 'X') {
            c.h(q);
        } else if (l == 'Y') {
            c.rxm(q);
        }
    }
    for (std::size_t q : support) {
        c.cnot(q, ancilla);
    }
    if (negative) {
        c.x(ancilla);
    }
    c.measure(ancilla, bit);
    for (std::size_t q : support) {
        char l = s.letter(q);
        if (l == 'X') {
            c.h(q);
        } else if (l == 'Y') {
            c.rxp(q);
        }
    }
    c.conditional(bit, {GateKind::X, static_cast<std::uint32_t>(ancilla)});
    return c;
}

Circuit conditional_pauli(const PauliString& p, std::size_t bit, std::size_t width, std::size_t classical_bits) {
    Circuit c(width, classical_bits);
    for (std::size_t q = 0; q < p.num_qubits(); ++q) {
        char l = p.letter(q);
        auto uq = static_cast<std::uint32_t>(q);
        if (l == 'X' || l == 'Y') {
            c.conditional(bit, {GateKind::X, uq});
        }
        if (l == 'Z' || l == 'Y') {
            c.conditional(bit, {GateKind::RZ, uq, 0, std::numbers::pi});
        }
    }
    return c;
}

void AdiabaticSchedule::validate() const {
    if (outer_steps < 1 || inner_steps < 1) {
        throw std::invalid_argument("adiabatic schedule needs at least one outer and one inner step");
    }
    if (!std::isfinite(d_tau) || d_tau <= 0.0) {
        throw std::invalid_argument("adiabatic time step must be positive");
    }
    if (!std::isfinite(beta_final)) {
        throw std::invalid_argument("beta_final must be finite");
    }
}

double AdiabaticSchedule::beta(int step) const {
    if (outer_steps == 1) {
        return beta_final;
    }
    return beta_final * static_cast<double>(step) / static_cast<double>(outer_steps - 1);
}

EncodedHamiltonian interpolated_hamiltonian(const QubitLayout& layout, const ModelParams& params, double beta) {
    ModelParams p = params;
    p.t = params.t * beta;
    return build_hamiltonian(layout, p, false);
}

Circuit adiabatic_circuit(const QubitLayout& layout, const ModelParams& params, const AdiabaticSchedule& schedule) {
    schedule.validate();
    Circuit c(layout.num_qubits());
    for (int k = 0; k < schedule.outer_steps; ++k) {
        Circuit step = trotter_step(interpolated_hamiltonian(layout, params, schedule.beta(k)), schedule.d_tau);
        for (int i = 0; i < schedule.inner_steps; ++i) {
            c.append(step);
        }
    }
    return c;
}

}  // namespace defermion
