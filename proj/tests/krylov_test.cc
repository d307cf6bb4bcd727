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


#include "defermion/krylov.hpp"

#include <random>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

using namespace defermion;

namespace {

Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = cplx(g(rng), g(rng));
        }
    }
    return 0.5 * (a + a.adjoint());
}

Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(n);
    for (auto& a : v) {
        a = cplx(g(rng), g(rng));
    }
    return v.normalized();
}

MatVec dense_matvec(const Eigen::MatrixXcd& m) {
    return [&m](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y = m * x; };
}

}  // namespace

TEST(Krylov, LanczosMatchesDenseSolver) {
    Eigen::MatrixXcd h = random_hermitian(300, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    double bound = h.cwiseAbs().rowwise().sum().maxCoeff();
    EigenPair p = lanczos_lowest(dense_matvec(h), 300, bound, LanczosOptions{});
    EXPECT_NEAR(p.value, es.eigenvalues()[0], 1e-9);
    EXPECT_LT((h * p.vector - p.value * p.vector).norm(), 1e-8);
}

TEST(Krylov, GroundStateCountsDegeneracy) {
    Eigen::VectorXd d(6);
    d << -2.0, -2.0, -1.0, 0.0, 1.0, 3.0;
    Eigen::MatrixXcd u = random_hermitian(6, 2).householderQr().householderQ();
    Eigen::MatrixXcd h = u * d.cast<cplx>().asDiagonal() * u.adjoint();
    GroundState gs = ground_state(dense_matvec(h), 6, 3.0);
    EXPECT_NEAR(gs.energy, -2.0, 1e-12);
    EXPECT_EQ(gs.degeneracy, 2);
}

TEST(Krylov, LanczosPathFindsDegeneracy) {
    Eigen::Index n = 400;
    Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(n, -1.0, 5.0);
    d[0] = d[1] = d[2] = -3.0;
    Eigen::MatrixXcd u = random_hermitian(n, 3).householderQr().householderQ();
    Eigen::MatrixXcd h = u * d.cast<cplx>().asDiagonal() * u.adjoint();
    GroundState gs = ground_state(dense_matvec(h), n, 6.0, LanczosOptions{}, 16);
    EXPECT_NEAR(gs.energy, -3.0, 1e-9);
    EXPECT_EQ(gs.degeneracy, 3);
}

TEST(Krylov, ExpmMatchesDenseExponential) {
    Eigen::MatrixXcd h = random_hermitian(64, 4);
    Eigen::VectorXcd v = random_vector(64, 5);
    double bound = h.cwiseAbs().rowwise().sum().maxCoeff();
    for (double tau : {0.0, 0.05, 1.0, 7.5}) {
        Eigen::MatrixXcd u = (cplx(0, -tau) * h).exp();
        Eigen::VectorXcd w = krylov_expm(dense_matvec(h), v, tau, bound);
        EXPECT_LT((w - u * v).norm(), 1e-9) << tau;
        EXPECT_NEAR(w.norm(), 1.0, 1e-10);
    }
}

TEST(Krylov, ExpmExactOnSmallSpace) {
    Eigen::MatrixXcd h = random_hermitian(5, 6);
    Eigen::VectorXcd v = random_vector(5, 7);
    Eigen::VectorXcd w = krylov_expm(dense_matvec(h), v, -3.0, 20.0);
    EXPECT_LT((w - (cplx(0, 3.0) * h).exp() * v).norm(), 1e-10);
}
