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

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace defermion {

using cplx = std::complex<double>;

/// y = H x for a Hermitian H.
using MatVec = std::function<void(const Eigen::VectorXcd& x, Eigen::VectorXcd& y)>;

struct LanczosOptions {
    int krylov_dim = 120;
    int max_restarts = 200;
    /// Converged when ||Hv - Ev|| < tol * norm_bound.
    double tol = 1e-11;
    double degeneracy_tol = 1e-9;
    int max_degenerate = 16;
    std::uint64_t seed = 20260101;
};

struct EigenPair {
    double value = 0.0;
    Eigen::VectorXcd vector;
    double residual = 0.0;
};

/// Lowest eigenpair of H restricted to the orthogonal complement of `deflate`.
/// Restarted Lanczos with full reorthogonalization.
EigenPair lanczos_lowest(const MatVec& h, Eigen::Index dim, double norm_bound, const LanczosOptions& opts,
                         const std::vector<Eigen::VectorXcd>& deflate = {});

struct GroundState {
    double energy = 0.0;
    Eigen::VectorXcd state;
    int degeneracy = 1;
    double residual = 0.0;
};

/// Ground state and its degeneracy (eigenvalues within degeneracy_tol).
/// Dense diagonalization below `dense_cap`, deflated Lanczos otherwise.
GroundState ground_state(const MatVec& h, Eigen::Index dim, double norm_bound, const LanczosOptions& opts = {},
                         Eigen::Index dense_cap = 2048);

struct ExpmOptions {
    int max_krylov = 30;
    /// Allowed error per unit time.
    double tol_rate = 1e-12;
};

/// exp(-i H tau) v by adaptive Lanczos steps.
Eigen::VectorXcd krylov_expm(const MatVec& h, const Eigen::VectorXcd& v, double tau, double norm_bound,
                             const ExpmOptions& opts = {});

}  // namespace defermion
