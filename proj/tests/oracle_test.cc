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


#include "defermion/oracle.hpp"

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

using namespace defermion;

namespace {

ModelParams params(double t, double U, int n) {
    ModelParams p;
    p.t = t;
    p.U = U;
    p.n_target = n;
    return p;
}

}  // namespace

TEST(Oracle, AtomicLimitEnergyPerSite) {
    SpectrumResult r = fermionic_ed({2, 2}, params(0.0, 1.0, 4));
    EXPECT_NEAR(r.ground_energy / 4.0, -0.25, 1e-10);
}

TEST(Oracle, FreeLimitEnergyPerSite) {
    SpectrumResult r = fermionic_ed({2, 2}, params(0.1, 0.0, 4));
    EXPECT_NEAR(r.ground_energy / 4.0, -0.1, 1e-10);
}

TEST(Oracle, ModeOrderDoesNotChangeSpectrum) {
    ModelParams p = params(0.1, 0.4, 4);
    FermionEdOptions o;
    o.mode_order = {7, 6, 5, 4, 3, 2, 1, 0};
    EXPECT_NEAR(fermionic_ed({2, 2}, p).ground_energy, fermionic_ed({2, 2}, p, o).ground_energy, 1e-10);
}

TEST(Oracle, DeformedMatchesFermionic) {
    QubitLayout l({2, 2}, false);
    for (int n : {2, 4, 6}) {
        for (double r : {0.0, 4.0, 10.0}) {
            ModelParams p = params(0.1, 0.1 * r, n);
            double ef = fermionic_ed({2, 2}, p).ground_energy;
            double ep = deformed_ed(l, p, DeformedMode::Projected).ground_energy;
            double eq = deformed_ed(l, p, DeformedMode::Penalty).ground_energy;
            EXPECT_NEAR(ep, ef, 1e-9 * std::max(1.0, std::abs(ef))) << n << " " << r;
            EXPECT_NEAR(eq, ef, 1e-9 * std::max(1.0, std::abs(ef))) << n << " " << r;
        }
    }
}

TEST(Oracle, CapsAreEnforced) {
    EXPECT_THROW(fermionic_ed({3, 3}, params(0.1, 1.0, 9)), std::invalid_argument);
    EXPECT_THROW(deformed_ed(QubitLayout({3, 2}, false), params(0.1, 1.0, 6), DeformedMode::Penalty),
                 std::invalid_argument);
}

TEST(Oracle, NormBoundDominatesSpectrum) {
    QubitLayout l({2, 1}, false);
    PauliSum h = build_hamiltonian(l, params(0.3, 1.0, 2), true).to_sum();
    Eigen::MatrixXcd d = to_dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
    EXPECT_GE(norm_bound(h), es.eigenvalues().cwiseAbs().maxCoeff() - 1e-12);
}

TEST(Oracle, ApplySumMatchesDense) {
    QubitLayout l({2, 1}, false);
    PauliSum h = build_hamiltonian(l, params(0.3, 1.0, 2), true).to_sum();
    Eigen::VectorXcd x = Eigen::VectorXcd::LinSpaced(1 << l.num_qubits(), 0.0, 1.0);
    Eigen::VectorXcd y;
    apply_pauli_sum(h, x, y);
    EXPECT_LT((y - to_dense(h) * x).norm(), 1e-12);
}

TEST(Oracle, SectorEvolverMatchesDenseExponential) {
    QubitLayout l({2, 2}, false);
    PauliSum h = build_hamiltonian(l, params(0.1, 0.5, 4), false).to_sum();
    SectorBasis basis = layout_sector(l);
    SectorEvolver ev(basis, h);
    Eigen::MatrixXcd m = Eigen::MatrixXcd(ev.matrix());
    Eigen::VectorXcd v = basis.basis_state(basis.representatives()[5]);
    Eigen::VectorXcd want = (cplx(0, -2.0) * m).exp() * v;
    EXPECT_LT((ev.evolve(v, 2.0) - want).norm(), 1e-10);
    EXPECT_NEAR(ev.energy(v), (v.adjoint() * m * v)(0, 0).real(), 1e-12);
}

TEST(Oracle, DoubleOccupancyOfBasisState) {
    QubitLayout l({2, 1}, false);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(1 << l.num_qubits());
    e[0b0011] = 1.0;
    EXPECT_NEAR(double_occupancy(l, e), 0.5, 1e-15);
    EXPECT_THROW(double_occupancy(l, Eigen::VectorXcd::Zero(4)), std::invalid_argument);
}
