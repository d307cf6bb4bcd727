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


#include "defermion/observables.hpp"

#include <random>

#include <gtest/gtest.h>

#include "defermion/emulator.hpp"
#include "defermion/oracle.hpp"

using namespace defermion;

TEST(Observables, BasisStateValues) {
    QubitLayout l({2, 1}, false);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(1 << l.num_qubits());
    std::uint64_t b = (std::uint64_t{1} << l.matter_qubit(0, Flavor::Up)) |
                      (std::uint64_t{1} << l.matter_qubit(0, Flavor::Down)) |
                      (std::uint64_t{1} << l.matter_qubit(1, Flavor::Down)) | (std::uint64_t{1} << l.link_qubit(0));
    e[static_cast<Eigen::Index>(b)] = 1.0;
    LocalObservables o = measure_local(l, e);
    EXPECT_DOUBLE_EQ(o.charge(0), 2.0);
    EXPECT_DOUBLE_EQ(o.sz(0), 0.0);
    EXPECT_DOUBLE_EQ(o.sz(1), -0.5);
    EXPECT_DOUBLE_EQ(o.n_double[0], 1.0);
    EXPECT_DOUBLE_EQ(o.spin_squared(0), 0.0);
    EXPECT_DOUBLE_EQ(o.spin_squared(1), 0.75);
    EXPECT_DOUBLE_EQ(o.charge_variance(0), 0.0);
    EXPECT_DOUBLE_EQ(o.total_charge(), 3.0);
    EXPECT_DOUBLE_EQ(o.total_sz(), -0.5);
    EXPECT_DOUBLE_EQ(o.double_occupancy(), 0.5);
    ASSERT_EQ(o.rishon.size(), 1u);
    EXPECT_DOUBLE_EQ(o.rishon[0], 1.0);
}

TEST(Observables, SuperpositionVariance) {
    QubitLayout l({1, 1}, false);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    LocalObservables o = measure_local(l, v);
    EXPECT_NEAR(o.charge(0), 1.0, 1e-15);
    EXPECT_NEAR(o.charge_variance(0), 1.0, 1e-15);
    EXPECT_NEAR(o.spin_squared(0), 0.0, 1e-15);
}

TEST(Observables, SectorAndFullAgree) {
    QubitLayout l({2, 2}, true);
    SectorBasis basis = layout_sector(l);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.dim()));
    for (auto& a : v) {
        a = cplx(g(rng), g(rng));
    }
    v.normalize();
    LocalObservables a = measure_local(l, basis, v);
    LocalObservables b = measure_local(l, basis.embed(v));
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(a.n_up[j], b.n_up[j], 1e-12);
        EXPECT_NEAR(a.n_down[j], b.n_down[j], 1e-12);
        EXPECT_NEAR(a.n_double[j], b.n_double[j], 1e-12);
    }
    ASSERT_EQ(a.rishon.size(), b.rishon.size());
    for (std::size_t k = 0; k < a.rishon.size(); ++k) {
        EXPECT_NEAR(a.rishon[k], b.rishon[k], 1e-12);
    }
}

TEST(Observables, SizeMismatchThrows) {
    QubitLayout l({2, 1}, false);
    EXPECT_THROW(measure_local(l, Eigen::VectorXcd::Zero(8)), std::invalid_argument);
}
