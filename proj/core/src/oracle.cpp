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

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace defermion {

namespace {

using Triplet = Eigen::Triplet<cplx, std::int64_t>;

std::uint64_t low_bits(std::size_t k) {
    return (std::uint64_t{1} << k) - 1;
}

/// c_i^dagger c_j |s>, returning false when the result vanishes.
bool hop(std::uint64_t s, std::size_t i, std::size_t j, std::uint64_t& out, double& sign) {
    std::uint64_t bj = std::uint64_t{1} << j;
    std::uint64_t bi = std::uint64_t{1} << i;
    if (!(s & bj)) {
        return false;
    }
    double sg = (std::popcount(s & low_bits(j)) & 1) ? -1.0 : 1.0;
    s ^= bj;
    if (s & bi) {
        return false;
    }
    sg *= (std::popcount(s & low_bits(i)) & 1) ? -1.0 : 1.0;
    out = s | bi;
    sign = sg;
    return true;
}

double sparse_norm_bound(const SparseMatrix& m) {
    double best = 0.0;
    for (std::int64_t r = 0; r < m.outerSize(); ++r) {
        double row = 0.0;
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            row += std::abs(it.value());
        }
        best = std::max(best, row);
    }
    return std::max(best, 1e-300);
}

SpectrumResult to_spectrum(const GroundState& g) {
    return {g.energy, g.state, g.degeneracy, g.residual};
}

MatVec sparse_matvec(const SparseMatrix& m) {
    return [&m](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y.noalias() = m * x; };
}

}  // namespace

SparseMatrix fermionic_hamiltonian(const LatticeSpec& spec, const ModelParams& params,
                                   const std::vector<std::size_t>& mode_order) {
    spec.validate();
    params.validate();
    QubitLayout layout(spec, false);
    std::size_t sites = spec.num_sites();
    std::size_t modes = 2 * sites;
    if (modes > 30) {
        throw std::invalid_argument("fermionic_hamiltonian: too many modes");
    }
    std::vector<std::size_t> order = mode_order;
    if (order.empty()) {
        order.resize(modes);
        std::iota(order.begin(), order.end(), 0);
    }
    if (order.size() != modes) {
        throw std::invalid_argument("mode order has wrong length");
    }
    auto mode = [&](std::size_t site, Flavor f) { return order[2 * site + static_cast<std::size_t>(f)]; };
    const auto& geo = layout.geometry();
    std::size_t dim = std::size_t{1} << modes;
    std::vector<Triplet> entries;
    for (std::uint64_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        int total = 0;
        for (std::size_t j = 0; j < sites; ++j) {
            double nu = static_cast<double>((s >> mode(j, Flavor::Up)) & 1);
            double nd = static_cast<double>((s >> mode(j, Flavor::Down)) & 1);
            diag += params.U * (nu - 0.5) * (nd - 0.5);
            total += static_cast<int>(nu + nd);
        }
        double dn = total - params.n_target;
        diag += params.mu_tilde * dn * dn;
        if (diag != 0.0) {
            entries.emplace_back(static_cast<std::int64_t>(s), static_cast<std::int64_t>(s), diag);
        }
        if (params.t == 0.0) {
            continue;
        }
        for (const Link& l : geo.links) {
            std::size_t a = layout.site_index(l.from);
            std::size_t b = layout.site_index(l.to());
            for (Flavor f : {Flavor::Up, Flavor::Down}) {
                for (auto [i, j] : {std::pair{mode(a, f), mode(b, f)}, std::pair{mode(b, f), mode(a, f)}}) {
                    std::uint64_t out = 0;
                    double sign = 0.0;
                    if (hop(s, i, j, out, sign)) {
                        entries.emplace_back(static_cast<std::int64_t>(out), static_cast<std::int64_t>(s),
                                             -params.t * sign);
                    }
                }
            }
        }
    }
    auto d = static_cast<std::int64_t>(dim);
    SparseMatrix m(d, d);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

SpectrumResult fermionic_ed(const LatticeSpec& spec, const ModelParams& params, const FermionEdOptions& opts) {
    spec.validate();
    if (2 * spec.num_sites() > opts.max_modes) {
        throw std::invalid_argument("fermionic_ed: " + std::to_string(2 * spec.num_sites()) +
                                    " modes exceed the cap of " + std::to_string(opts.max_modes));
    }
    SparseMatrix h = fermionic_hamiltonian(spec, params, opts.mode_order);
    return to_spectrum(ground_state(sparse_matvec(h), h.rows(), sparse_norm_bound(h), opts.lanczos, 4096));
}

SectorBasis layout_sector(const QubitLayout& layout, int max_log2_dim) {
    return SectorBasis(layout.num_qubits(), build_stabilizers(layout).all(), max_log2_dim);
}

double norm_bound(const PauliSum& h) {
    double s = 0.0;
    for (const auto& t : h.terms()) {
        s += std::abs(t.coeff);
    }
    return std::max(s, 1e-300);
}

void apply_pauli_sum(const PauliSum& h, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
    auto dim = static_cast<std::uint64_t>(x.size());
    if (dim != (std::uint64_t{1} << h.num_qubits())) {
        throw std::invalid_argument("apply_pauli_sum: vector size does not match qubit count");
    }
    y.setZero(x.size());
    for (const auto& t : h.terms()) {
        cplx amp[4];
        for (int k = 0; k < 4; ++k) {
            amp[k] = t.coeff * phase_value(k);
        }
        std::uint64_t xm = t.op.x_mask();
        for (std::uint64_t b = 0; b < dim; ++b) {
            y[static_cast<Eigen::Index>(b ^ xm)] += amp[t.op.act_exponent(b)] * x[static_cast<Eigen::Index>(b)];
        }
    }
}

SpectrumResult deformed_ed(const QubitLayout& layout, const ModelParams& params, DeformedMode mode,
                           const DeformedEdOptions& opts) {
    if (layout.num_qubits() > opts.max_qubits) {
        throw std::invalid_argument("deformed_ed: " + std::to_string(layout.num_qubits()) +
                                    " qubits exceed the cap of " + std::to_string(opts.max_qubits));
    }
    PauliSum h = build_hamiltonian(layout, params, true).to_sum();
    if (mode == DeformedMode::Projected) {
        SectorBasis basis = layout_sector(layout);
        SparseMatrix m = basis.matrix(h);
        SpectrumResult r = to_spectrum(ground_state(sparse_matvec(m), m.rows(), norm_bound(h), opts.lanczos));
        r.ground_state = basis.embed(r.ground_state);
        return r;
    }
    StabilizerSet stabs = build_stabilizers(layout);
    for (const auto& v : stabs.vertex) {
        h.add(-opts.alpha_v, v);
        h.add(opts.alpha_v, PauliString(layout.num_qubits()));
    }
    h.canonicalize();
    MatVec mv = [&h](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { apply_pauli_sum(h, x, y); };
    return to_spectrum(ground_state(mv, static_cast<Eigen::Index>(std::size_t{1} << layout.num_qubits()),
                                    norm_bound(h), opts.lanczos));
}

SectorEvolver::SectorEvolver(const SectorBasis& basis, const PauliSum& h)
    : basis_(basis), matrix_(basis.matrix(h)), norm_(defermion::norm_bound(h)) {}

Eigen::VectorXcd SectorEvolver::evolve(const Eigen::VectorXcd& v, double tau, const ExpmOptions& opts) const {
    return krylov_expm(sparse_matvec(matrix_), v, tau, norm_, opts);
}

double SectorEvolver::energy(const Eigen::VectorXcd& v) const {
    return v.dot(matrix_ * v).real();
}

Eigen::VectorXcd sector_projected_evolution(const QubitLayout& layout, const EncodedHamiltonian& h,
                                            const Eigen::VectorXcd& state, double tau) {
    SectorBasis basis = layout_sector(layout, 17);
    double outside = 0.0;
    Eigen::VectorXcd v = basis.project(state, &outside);
    if (outside > 1e-10) {
        throw std::invalid_argument("state has a component of norm " + std::to_string(outside) +
                                    " outside the stabilizer sector");
    }
    SectorEvolver ev(basis, h.to_sum());
    return basis.embed(ev.evolve(v, tau));
}

double double_occupancy(const QubitLayout& layout, const Eigen::VectorXcd& state) {
    std::size_t sites = layout.geometry().sites.size();
    if (state.size() != static_cast<Eigen::Index>(std::size_t{1} << layout.num_qubits())) {
        throw std::invalid_argument("double_occupancy: state size does not match layout");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < sites; ++j) {
        std::uint64_t mask = (std::uint64_t{1} << layout.matter_qubit(j, Flavor::Up)) |
                             (std::uint64_t{1} << layout.matter_qubit(j, Flavor::Down));
        for (Eigen::Index b = 0; b < state.size(); ++b) {
            if ((static_cast<std::uint64_t>(b) & mask) == mask) {
                total += std::norm(state[b]);
            }
        }
    }
    return total / static_cast<double>(sites);
}

}  // namespace defermion
