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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace defermion {

namespace {

void orthogonalize(Eigen::VectorXcd& w, const std::vector<Eigen::VectorXcd>& against) {
    for (const auto& u : against) {
        w -= u * u.dot(w);
    }
}

void orthogonalize(Eigen::VectorXcd& w, const Eigen::MatrixXcd& basis, Eigen::Index cols) {
    if (cols == 0) {
        return;
    }
    auto b = basis.leftCols(cols);
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXcd c = b.adjoint() * w;
        w -= b * c;
    }
}

struct Tridiag {
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;  // beta[j] couples j and j+1
};

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_tridiag(const Tridiag& t, Eigen::Index k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        m(j, j) = t.alpha[j];
        if (j + 1 < k) {
            m(j, j + 1) = t.beta[j];
            m(j + 1, j) = t.beta[j];
        }
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m);
}

}  // namespace

EigenPair lanczos_lowest(const MatVec& h, Eigen::Index dim, double norm_bound, const LanczosOptions& opts,
                         const std::vector<Eigen::VectorXcd>& deflate) {
    auto available = dim - static_cast<Eigen::Index>(deflate.size());
    if (available <= 0) {
        throw std::invalid_argument("lanczos: no space left after deflation");
    }
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = {normal(rng), normal(rng)};
    }
    orthogonalize(v, deflate);
    orthogonalize(v, deflate);
    v.normalize();

    Eigen::Index m = std::min<Eigen::Index>(opts.krylov_dim, available);
    Eigen::MatrixXcd basis(dim, m);
    Tridiag t{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
    Eigen::VectorXcd w(dim);
    EigenPair best;
    for (int restart = 0; restart <= opts.max_restarts; ++restart) {
        basis.col(0) = v;
        Eigen::Index k = 0;
        for (Eigen::Index j = 0; j < m; ++j) {
            h(basis.col(j), w);
            t.alpha[j] = basis.col(j).dot(w).real();
            orthogonalize(w, deflate);
            orthogonalize(w, basis, j + 1);
            k = j + 1;
            double b = w.norm();
            if (j + 1 == m || b < 1e-13 * std::max(norm_bound, 1e-300)) {
                break;
            }
            t.beta[j] = b;
            basis.col(j + 1) = w / b;
        }
        auto es = solve_tridiag(t, k);
        Eigen::VectorXcd x = basis.leftCols(k) * es.eigenvectors().col(0).cast<cplx>();
        orthogonalize(x, deflate);
        x.normalize();
        h(x, w);
        double theta = x.dot(w).real();
        w -= theta * x;
        orthogonalize(w, deflate);
        best = {theta, x, w.norm()};
        if (best.residual < opts.tol * norm_bound) {
            return best;
        }
        v = x;
    }
    return best;
}

GroundState ground_state(const MatVec& h, Eigen::Index dim, double norm_bound, const LanczosOptions& opts,
                         Eigen::Index dense_cap) {
    GroundState g;
    if (dim <= dense_cap) {
        Eigen::MatrixXcd m(dim, dim);
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        Eigen::VectorXcd col(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            e[i] = 1.0;
            h(e, col);
            m.col(i) = col;
            e[i] = 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        g.energy = es.eigenvalues()[0];
        g.state = es.eigenvectors().col(0);
        g.degeneracy = 0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (es.eigenvalues()[i] - g.energy < opts.degeneracy_tol) {
                ++g.degeneracy;
            }
        }
        h(g.state, col);
        g.residual = (col - g.energy * g.state).norm();
        return g;
    }
    std::vector<Eigen::VectorXcd> found;
    EigenPair first = lanczos_lowest(h, dim, norm_bound, opts);
    g.energy = first.value;
    g.state = first.vector;
    g.residual = first.residual;
    found.push_back(first.vector);
    while (static_cast<int>(found.size()) < opts.max_degenerate && static_cast<Eigen::Index>(found.size()) < dim) {
        LanczosOptions next = opts;
        next.seed = opts.seed + found.size();
        EigenPair p = lanczos_lowest(h, dim, norm_bound, next, found);
        if (p.value - g.energy >= opts.degeneracy_tol) {
            break;
        }
        found.push_back(p.vector);
    }
    g.degeneracy = static_cast<int>(found.size());
    return g;
}

Eigen::VectorXcd krylov_expm(const MatVec& h, const Eigen::VectorXcd& v, double tau, double norm_bound,
                             const ExpmOptions& opts) {
    Eigen::VectorXcd w = v;
    if (tau == 0.0) {
        return w;
    }
    double sign = tau < 0 ? -1.0 : 1.0;
    double remaining = std::abs(tau);
    double step = std::min(remaining, 10.0 / std::max(norm_bound, 1e-300));
    Eigen::Index dim = v.size();
    Eigen::Index m = std::min<Eigen::Index>(opts.max_krylov, dim);
    Eigen::MatrixXcd basis(dim, m);
    Tridiag t{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
    Eigen::VectorXcd x(dim);
    auto propagate = [&](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es, Eigen::Index k, double dt) {
        const Eigen::MatrixXd& q = es.eigenvectors();
        Eigen::VectorXcd phases(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            phases[i] = std::exp(cplx(0.0, -sign * dt * es.eigenvalues()[i])) * q(0, i);
        }
        return Eigen::VectorXcd(q.cast<cplx>() * phases);
    };
    while (remaining > 0.0) {
        double beta0 = w.norm();
        if (beta0 == 0.0) {
            return w;
        }
        basis.col(0) = w / beta0;
        Eigen::Index k = 0;
        double tail = 0.0;
        bool exact = false;
        for (Eigen::Index j = 0; j < m; ++j) {
            h(basis.col(j), x);
            t.alpha[j] = basis.col(j).dot(x).real();
            orthogonalize(x, basis, j + 1);
            k = j + 1;
            double b = x.norm();
            if (b < 1e-13 * std::max(norm_bound, 1e-300)) {
                exact = true;
                break;
            }
            if (j + 1 == m) {
                tail = b;
                break;
            }
            // Stop early once the current step already meets the budget.
            if (k >= 4) {
                double dt = std::min(step, remaining);
                Eigen::VectorXcd y = propagate(solve_tridiag(t, k), k, dt);
                if (b * std::abs(y[k - 1]) <= opts.tol_rate * dt) {
                    tail = b;
                    break;
                }
            }
            t.beta[j] = b;
            basis.col(j + 1) = x / b;
        }
        if (k == dim) {
            exact = true;
        }
        auto es = solve_tridiag(t, k);
        for (;;) {
            double dt = std::min(step, remaining);
            Eigen::VectorXcd y = propagate(es, k, dt);
            double err = exact ? 0.0 : tail * std::abs(y[k - 1]);
            if (err <= opts.tol_rate * dt || dt < 1e-12 * std::abs(tau)) {
                w = beta0 * (basis.leftCols(k) * y);
                remaining -= dt;
                if (err < 0.1 * opts.tol_rate * dt) {
                    step = dt * 1.5;
                }
                break;
            }
            step = dt * 0.5;
        }
    }
    return w;
}

}  // namespace defermion
