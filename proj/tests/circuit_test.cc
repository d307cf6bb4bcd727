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

#include <random>

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "defermion/emulator.hpp"

using namespace defermion;

namespace {

// Frobenius distance after removing the global phase.
double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    cplx overlap = (b.adjoint() * a).trace();
    cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
    return (a - phase * b).norm();
}

}  // namespace

TEST(Circuit, RandomPropagatorsMatchDenseExponential) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    static const char kL[] = "IXYZ";
    for (int trial = 0; trial < 100; ++trial) {
        std::string letters;
        do {
            letters.clear();
            for (int q = 0; q < 4; ++q) {
                letters += kL[rng() % 4];
            }
        } while (letters == "IIII");
        PauliString p = PauliString::from_letters((rng() & 1 ? "-" : "") + letters);
        double c = u(rng);
        double dt = 0.1 + 0.5 * std::abs(u(rng));
        Eigen::MatrixXcd want = (cplx(0, -c * dt) * to_dense(p)).exp();
        EXPECT_LT(phase_distance(circuit_unitary(compile_propagator(c, p, dt)), want), 1e-12) << p.to_string();
    }
}

TEST(Circuit, PropagatorStructure) {
    Circuit c = compile_propagator(0.5, PauliString::from_letters("XZIY"), 0.2);
    std::vector<GateKind> kinds;
    for (const auto& g : c.gates()) {
        kinds.push_back(g.kind);
    }
    std::vector<GateKind> want = {GateKind::H,    GateKind::RXM,  GateKind::CNOT, GateKind::CNOT, GateKind::RZ,
                                  GateKind::CNOT, GateKind::CNOT, GateKind::H,    GateKind::RXP};
    EXPECT_EQ(kinds, want);
    EXPECT_EQ(c.gates()[4].q0, 3u);
    ASSERT_EQ(c.blocks().size(), 1u);
    EXPECT_EQ(c.blocks()[0].end, c.size());
    EXPECT_NEAR(c.blocks()[0].theta, 0.1, 1e-15);
}

TEST(Circuit, PropagatorRejectsBadStrings) {
    EXPECT_THROW(compile_propagator(1.0, PauliString::from_letters("II"), 0.1), std::invalid_argument);
    EXPECT_THROW(compile_propagator(1.0, PauliString::from_letters("iXZ"), 0.1), std::invalid_argument);
}

TEST(Circuit, TrotterStepIsOrderedProduct) {
    QubitLayout l({2, 1}, false);
    ModelParams p;
    p.t = 0.3;
    p.n_target = 2;
    EncodedHamiltonian h = build_hamiltonian(l, p, false);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Identity(1 << l.num_qubits(), 1 << l.num_qubits());
    for (const auto& t : h.terms) {
        want = (cplx(0, -t.coeff * 0.1) * to_dense(t.op)).exp() * want;
    }
    EXPECT_LT(phase_distance(circuit_unitary(trotter_step(h, 0.1)), want), 1e-12);
}

TEST(Circuit, TextFormat) {
    Circuit c(3, 1);
    c.h(0).cnot(0, 2).rz(1, 0.25).measure(2, 0).conditional(0, {GateKind::X, 1});
    EXPECT_EQ(c.to_text(), "H 0\nCNOT 0 2\nRZ 1 0.25\nMEASURE 2 0\nIF 0 X 1\n");
    EXPECT_FALSE(c.is_unitary());
}

TEST(Circuit, RegisterChecks) {
    Circuit c(2, 1);
    EXPECT_THROW(c.h(2), std::out_of_range);
    EXPECT_THROW(c.cnot(1, 1), std::invalid_argument);
    EXPECT_THROW(c.measure(0, 1), std::out_of_range);
    EXPECT_THROW(c.rz(0, std::nan("")), std::invalid_argument);
    EXPECT_THROW(c.append(Circuit(3)), std::invalid_argument);
    EXPECT_THROW(c.widen(1, 1), std::invalid_argument);
}

TEST(Circuit, StabilizerMeasurementReadsEigenvalue) {
    for (const char* s : {"ZZ", "XX", "-YY", "YY"}) {
        PauliString p = PauliString::from_letters(s);
        Circuit bell(3, 1);
        bell.h(0).cnot(0, 1);
        bell.append(stabilizer_measure_circuit(p, 2, 0, 3, 1));
        StateVector sv(3, 5);
        auto bits = run(bell, sv);
        StateVector ref(2);
        ref.apply_h(0);
        ref.apply_cnot(0, 1);
        double value = ref.expectation(p).real();
        EXPECT_EQ(bits[0], value > 0 ? 0 : 1) << s;
        EXPECT_NEAR(sv.probability(2, 0), 1.0, 1e-14) << s;
    }
    EXPECT_THROW(stabilizer_measure_circuit(PauliString::from_letters("ZZ"), 1, 0, 3, 1), std::invalid_argument);
}

TEST(Circuit, ConditionalPauliFollowsBit) {
    PauliString p = PauliString::from_letters("YZI");
    for (int bit : {0, 1}) {
        Circuit c(3, 1);
        if (bit) {
            c.x(2);
        }
        c.measure(2, 0);
        c.append(conditional_pauli(p, 0, 3, 1));
        StateVector sv(3);
        sv.apply_h(0);
        sv.apply_h(1);
        StateVector ref = sv;
        if (bit) {
            ref.apply_x(2);
            ref.apply_pauli(p);
        }
        run(c, sv);
        EXPECT_NEAR(std::abs(ref.amplitudes().dot(sv.amplitudes())), 1.0, 1e-14) << bit;
    }
}

TEST(Circuit, ScheduleRampAndFreeze) {
    AdiabaticSchedule s;
    EXPECT_DOUBLE_EQ(s.beta(0), 0.0);
    EXPECT_DOUBLE_EQ(s.beta(99), 1.0);
    EXPECT_EQ(s.total_steps(), 1000);
    s.beta_final = 0.0;
    EXPECT_DOUBLE_EQ(s.beta(50), 0.0);
    s.d_tau = 0.0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Circuit, AdiabaticCircuitLength) {
    QubitLayout l({2, 1}, false);
    ModelParams p;
    p.n_target = 2;
    AdiabaticSchedule s{3, 2, 0.1, 1.0};
    Circuit c = adiabatic_circuit(l, p, s);
    std::size_t at_zero = trotter_step(interpolated_hamiltonian(l, p, 0.0), 0.1).size();
    std::size_t full = trotter_step(interpolated_hamiltonian(l, p, 1.0), 0.1).size();
    EXPECT_EQ(c.size(), 2 * at_zero + 4 * full);
}
