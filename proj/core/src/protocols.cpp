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

#include "defermion/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "defermion/krylov.hpp"
#include "defermion/oracle.hpp"

namespace defermion {

namespace {

std::uint64_t all_qubits(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// Matter bits of the two checkerboard configurations (even sites down first).
std::pair<std::uint64_t, std::uint64_t> checkerboard(const QubitLayout& layout) {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    const auto& sites = layout.geometry().sites;
    for (std::size_t j = 0; j < sites.size(); ++j) {
        std::uint64_t up = std::uint64_t{1} << layout.matter_qubit(j, Flavor::Up);
        std::uint64_t down = std::uint64_t{1} << layout.matter_qubit(j, Flavor::Down);
        a |= sites[j].even() ? down : up;
        b |= sites[j].even() ? up : down;
    }
    return {a, b};
}

long long step_count(double total, double dt) {
    if (!std::isfinite(dt) || dt <= 0.0) {
        throw std::invalid_argument("time step must be positive");
    }
    if (!std::isfinite(total) || total < 0.0) {
        throw std::invalid_argument("total time must be nonnegative");
    }
    return std::llround(total / dt);
}

struct Gf2Row {
    std::uint64_t a = 0;  // pairs with the X part of the unknown
    std::uint64_t b = 0;  // pairs with the Z part
    int rhs = 0;
};

}  // namespace

Circuit initial_state_circuit(const QubitLayout& layout) {
    Circuit c(layout.num_qubits());
    std::size_t root = layout.matter_qubit(0, Flavor::Up);
    c.h(root);
    for (std::size_t j = 0; j < layout.geometry().sites.size(); ++j) {
        for (Flavor f : {Flavor::Up, Flavor::Down}) {
            std::size_t q = layout.matter_qubit(j, f);
            if (q != root) {
                c.cnot(root, q);
            }
        }
    }
    const auto& sites = layout.geometry().sites;
    for (std::size_t j = 0; j < sites.size(); ++j) {
        c.x(layout.matter_qubit(j, sites[j].even() ? Flavor::Down : Flavor::Up));
    }
    return c;
}

StateVector prepare_initial_state(const QubitLayout& layout, std::uint64_t seed) {
    StateVector s(layout.num_qubits(), seed);
    run(initial_state_circuit(layout), s);
    return s;
}

std::vector<std::optional<PauliString>> stabilizer_corrections(const std::vector<PauliString>& stabilizers,
                                                               std::uint64_t correctable) {
    for (std::size_t i = 0; i < stabilizers.size(); ++i) {
        for (std::size_t j = i + 1; j < stabilizers.size(); ++j) {
            if (!commutes(stabilizers[i], stabilizers[j])) {
                throw std::invalid_argument("stabilizers " + std::to_string(i) + " and " + std::to_string(j) +
                                            " do not commute");
            }
        }
    }
    std::vector<std::optional<PauliString>> out;
    for (std::size_t i = 0; i < stabilizers.size(); ++i) {
        std::size_t n = stabilizers[i].num_qubits();
        std::vector<Gf2Row> pivots;
        std::vector<std::pair<int, int>> pivot_at;  // (half, bit)
        bool feasible = true;
        for (std::size_t j = 0; j <= i && feasible; ++j) {
            const PauliString& s = stabilizers[j];
            Gf2Row r{s.z_mask() & correctable, s.x_mask() & correctable, j == i ? 1 : 0};
            for (std::size_t k = 0; k < pivots.size(); ++k) {
                auto [half, bit] = pivot_at[k];
                std::uint64_t word = half == 0 ? r.a : r.b;
                if ((word >> bit) & 1) {
                    r.a ^= pivots[k].a;
                    r.b ^= pivots[k].b;
                    r.rhs ^= pivots[k].rhs;
                }
            }
            if (r.a == 0 && r.b == 0) {
                feasible = r.rhs == 0;
                continue;
            }
            int half = r.a ? 0 : 1;
            int bit = std::countr_zero(half == 0 ? r.a : r.b);
            for (auto& p : pivots) {
                std::uint64_t word = half == 0 ? p.a : p.b;
                if ((word >> bit) & 1) {
                    p.a ^= r.a;
                    p.b ^= r.b;
                    p.rhs ^= r.rhs;
                }
            }
            pivots.push_back(r);
            pivot_at.emplace_back(half, bit);
        }
        if (!feasible) {
            out.emplace_back(std::nullopt);
            continue;
        }
        std::uint64_t x = 0;
        std::uint64_t z = 0;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            if (pivots[k].rhs) {
                auto [half, bit] = pivot_at[k];
                (half == 0 ? x : z) |= std::uint64_t{1} << bit;
            }
        }
        out.emplace_back(PauliString(n, x, z, 0));
    }
    return out;
}

FixingPlan fixing_plan(const QubitLayout& layout) {
    FixingPlan plan;
    plan.stabilizers = build_stabilizers(layout).all();
    plan.corrections =
        stabilizer_corrections(plan.stabilizers, all_qubits(layout.num_qubits()) & ~layout.matter_mask());
    return plan;
}

Circuit stabilizer_fixing_circuit(const FixingPlan& plan, std::size_t num_qubits) {
    std::size_t m = plan.stabilizers.size();
    Circuit c(num_qubits + 1, m);
    for (std::size_t i = 0; i < m; ++i) {
        c.append(stabilizer_measure_circuit(plan.stabilizers[i], num_qubits, i, num_qubits + 1, m));
        if (plan.corrections[i]) {
            c.append(conditional_pauli(*plan.corrections[i], i, num_qubits + 1, m));
        }
    }
    return c;
}

std::vector<std::uint8_t> fix_stabilizers(StateVector& state, const FixingPlan& plan, const RunOptions& opts) {
    if (plan.stabilizers.empty()) {
        return {};
    }
    std::size_t n = state.num_qubits();
    if (plan.stabilizers.front().num_qubits() != n) {
        throw std::invalid_argument("fixing plan does not match the register");
    }
    Circuit c = stabilizer_fixing_circuit(plan, n);
    state.add_qubit();
    std::vector<std::uint8_t> bits = run(c, state, opts);
    state.remove_qubit();
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] && !plan.corrections[i]) {
            throw ProtocolError("stabilizer " + std::to_string(i) + " (" + plan.stabilizers[i].to_string() +
                                ") reads -1 and has no correction on the link qubits");
        }
    }
    return bits;
}

std::vector<std::uint8_t> fix_stabilizers(StateVector& state, const QubitLayout& layout, const RunOptions& opts) {
    return fix_stabilizers(state, fixing_plan(layout), opts);
}

void adiabatic_ground_state(StateVector& state, const QubitLayout& layout, const ModelParams& params,
                            const AdiabaticSchedule& schedule, const RunOptions& opts) {
    schedule.validate();
    for (int k = 0; k < schedule.outer_steps; ++k) {
        Circuit step = trotter_step(interpolated_hamiltonian(layout, params, schedule.beta(k)), schedule.d_tau);
        for (int i = 0; i < schedule.inner_steps; ++i) {
            run(step, state, opts);
        }
    }
}

void inject_excitation(StateVector& state, const QubitLayout& layout, ExcitationKind kind, Site site) {
    PauliString op = excitation_operator(layout, kind, site);
    state.project(layout.matter_qubit(site, Flavor::Up), 1);
    if (kind == ExcitationKind::Spin) {
        state.project(layout.matter_qubit(site, Flavor::Down), 0);
    }
    state.apply_pauli(op);
}

std::vector<double> Trajectory::taus() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(r.tau);
    }
    return out;
}

std::vector<double> Trajectory::sz(std::size_t site) const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(r.sz.at(site));
    }
    return out;
}

std::vector<double> Trajectory::charge(std::size_t site) const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(r.charge.at(site));
    }
    return out;
}

namespace {

TrajectoryRecord from_local(const LocalObservables& o, double tau) {
    TrajectoryRecord r;
    r.tau = tau;
    for (std::size_t j = 0; j < o.n_up.size(); ++j) {
        r.sz.push_back(o.sz(j));
        r.charge.push_back(o.charge(j));
    }
    r.rishon = o.rishon;
    r.double_occupancy = o.double_occupancy();
    return r;
}

}  // namespace

TrajectoryRecord record_state(const QubitLayout& layout, const StateVector& state, const PauliSum& h,
                              const std::vector<PauliString>& stabilizers, double tau) {
    TrajectoryRecord r = from_local(measure_local(layout, state.amplitudes()), tau);
    r.energy = state.expectation(h);
    for (const auto& s : stabilizers) {
        r.stabilizers.push_back(state.expectation(s).real());
    }
    r.norm = state.norm();
    return r;
}

Trajectory evolve_and_record(StateVector& state, const QubitLayout& layout, const EncodedHamiltonian& h,
                             double total_tau, double dt, int record_every, const RunOptions& opts) {
    long long steps = step_count(total_tau, dt);
    if (record_every < 1) {
        throw std::invalid_argument("record interval must be at least one step");
    }
    if (state.num_qubits() != layout.num_qubits() || h.num_qubits != layout.num_qubits()) {
        throw std::invalid_argument("state, Hamiltonian and layout widths differ");
    }
    PauliSum hs = h.to_sum();
    std::vector<PauliString> stabs = build_stabilizers(layout).all();
    Circuit step = trotter_step(h, dt);
    Trajectory traj;
    traj.records.push_back(record_state(layout, state, hs, stabs, 0.0));
    for (long long k = 1; k <= steps; ++k) {
        run(step, state, opts);
        if (k % record_every == 0 || k == steps) {
            traj.records.push_back(record_state(layout, state, hs, stabs, static_cast<double>(k) * dt));
        }
    }
    return traj;
}

double forward_backward_error(const StateVector& initial, const QubitLayout& layout, const EncodedHamiltonian& h,
                              double dt, double tau_max, const RunOptions& opts) {
    long long steps = step_count(tau_max, dt);
    StateVector s = initial;
    double before = measure_local(layout, s.amplitudes()).double_occupancy();
    Circuit forward = trotter_step(h, dt);
    Circuit backward = trotter_step(h, -dt);
    for (long long k = 0; k < steps; ++k) {
        run(forward, s, opts);
    }
    for (long long k = 0; k < steps; ++k) {
        run(backward, s, opts);
    }
    return std::abs(measure_local(layout, s.amplitudes()).double_occupancy() - before);
}

std::optional<double> loglog_slope(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 2) {
        return std::nullopt;
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& r : rows) {
        if (!(r.dt > 0.0) || !(r.error > 0.0)) {
            return std::nullopt;
        }
        double x = std::log(r.dt);
        double y = std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    auto n = static_cast<double>(rows.size());
    double den = n * sxx - sx * sx;
    if (den <= 0.0) {
        return std::nullopt;
    }
    return (n * sxy - sx * sy) / den;
}

ConvergenceResult trotter_convergence(const QubitLayout& layout, const ModelParams& params,
                                      const std::vector<double>& dt_list, double tau_max, const RunOptions& opts,
                                      std::uint64_t seed) {
    if (dt_list.empty()) {
        throw std::invalid_argument("dt list is empty");
    }
    for (std::size_t i = 0; i < dt_list.size(); ++i) {
        if (!std::isfinite(dt_list[i]) || dt_list[i] <= 0.0) {
            throw std::invalid_argument("dt values must be positive");
        }
        if (i > 0 && !(dt_list[i] < dt_list[i - 1])) {
            throw std::invalid_argument("dt list must be strictly descending");
        }
    }
    params.validate();
    StateVector s = prepare_initial_state(layout, seed);
    fix_stabilizers(s, layout, opts);
    EncodedHamiltonian h = build_hamiltonian(layout, params, false);
    ConvergenceResult out;
    for (double dt : dt_list) {
        out.rows.push_back({dt, forward_backward_error(s, layout, h, dt, tau_max, opts)});
    }
    out.slope = loglog_slope(out.rows);
    return out;
}

std::optional<double> first_peak(const std::vector<double>& taus, const std::vector<double>& values,
                                 const PeakOptions& opts) {
    if (taus.size() != values.size()) {
        throw std::invalid_argument("first_peak: series lengths differ");
    }
    std::size_t n = values.size();
    if (n < 3) {
        return std::nullopt;
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = std::abs(values[i] - values[0]);
    }
    std::vector<double> s(d);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        s[i] = (d[i - 1] + d[i] + d[i + 1]) / 3.0;
    }
    double cut = opts.relative_height * *std::max_element(s.begin(), s.end());
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (s[i] > s[i - 1] && s[i] >= s[i + 1] && s[i] >= cut) {
            return taus[i];
        }
    }
    return std::nullopt;
}

SectorDynamics::SectorDynamics(const QubitLayout& layout, const ModelParams& params, int max_log2_dim)
    : layout_(layout), basis_(layout_sector(layout, max_log2_dim)), stabilizers_(build_stabilizers(layout).all()) {
    params.validate();
    ModelParams onsite = params;
    onsite.t = 0.0;
    ModelParams hop = params;
    hop.U = 0.0;
    PauliSum h0 = build_hamiltonian(layout, onsite, false).to_sum();
    PauliSum h1 = build_hamiltonian(layout, hop, false).to_sum();
    onsite_ = basis_.matrix(h0);
    hopping_ = basis_.matrix(h1);
    onsite_norm_ = h0.terms().empty() ? 0.0 : norm_bound(h0);
    hopping_norm_ = h1.terms().empty() ? 0.0 : norm_bound(h1);
}

Eigen::VectorXcd SectorDynamics::initial_state() const {
    auto [a, b] = checkerboard(layout_);
    std::uint64_t rest = all_qubits(layout_.num_qubits()) & ~layout_.matter_mask();
    // Enumerate subsets of the link qubits in increasing order.
    std::uint64_t l = 0;
    while (true) {
        if (basis_.satisfies_diagonal(a | l) && basis_.satisfies_diagonal(b | l)) {
            Eigen::VectorXcd v = basis_.basis_state(a | l) + basis_.basis_state(b | l);
            return v / v.norm();
        }
        if (l == rest) {
            break;
        }
        l = (l - rest) & rest;
    }
    throw std::invalid_argument("no link configuration satisfies the vertex constraints");
}

Eigen::VectorXcd SectorDynamics::from_full(const Eigen::VectorXcd& full) const {
    double outside = 0.0;
    Eigen::VectorXcd v = basis_.project(full, &outside);
    if (outside > 1e-10) {
        throw std::invalid_argument("state has a component of norm " + std::to_string(outside) +
                                    " outside the stabilizer sector");
    }
    return v;
}

Eigen::VectorXcd SectorDynamics::evolve(const Eigen::VectorXcd& v, double tau, double beta) const {
    MatVec mv = [this, beta](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
        y.noalias() = onsite_ * x;
        if (beta != 0.0) {
            y.noalias() += beta * (hopping_ * x);
        }
    };
    double bound = std::max(onsite_norm_ + std::abs(beta) * hopping_norm_, 1e-300);
    return krylov_expm(mv, v, tau, bound);
}

Eigen::VectorXcd SectorDynamics::adiabatic(const Eigen::VectorXcd& v, const AdiabaticSchedule& schedule) const {
    schedule.validate();
    Eigen::VectorXcd w = v;
    for (int k = 0; k < schedule.outer_steps; ++k) {
        w = evolve(w, schedule.d_tau * schedule.inner_steps, schedule.beta(k));
    }
    return w;
}

Eigen::VectorXcd SectorDynamics::inject(const Eigen::VectorXcd& v, ExcitationKind kind, Site site) const {
    PauliString op = excitation_operator(layout_, kind, site);
    std::uint64_t up = std::uint64_t{1} << layout_.matter_qubit(site, Flavor::Up);
    std::uint64_t down = std::uint64_t{1} << layout_.matter_qubit(site, Flavor::Down);
    std::uint64_t mask = kind == ExcitationKind::Spin ? (up | down) : up;
    const auto& reps = basis_.representatives();
    Eigen::VectorXcd w = v;
    for (std::size_t k = 0; k < reps.size(); ++k) {
        if ((reps[k] & mask) != up) {
            w[static_cast<Eigen::Index>(k)] = 0.0;
        }
    }
    double p = w.squaredNorm() / v.squaredNorm();
    if (p <= 1e-12) {
        throw ProtocolError("post-selection impossible: probability " + std::to_string(p));
    }
    w /= w.norm();
    return basis_.apply(op, w);
}

double SectorDynamics::energy(const Eigen::VectorXcd& v, double beta) const {
    Eigen::VectorXcd hv = onsite_ * v + beta * (hopping_ * v);
    return v.dot(hv).real() / v.squaredNorm();
}

TrajectoryRecord SectorDynamics::record(const Eigen::VectorXcd& v, double tau) const {
    TrajectoryRecord r = from_local(measure_local(layout_, basis_, v), tau);
    r.energy = energy(v);
    double n2 = v.squaredNorm();
    for (const auto& s : stabilizers_) {
        r.stabilizers.push_back(basis_.expectation(s, v).real() / n2);
    }
    r.norm = std::sqrt(n2);
    return r;
}

Trajectory SectorDynamics::evolve_and_record(Eigen::VectorXcd v, double total_tau, double record_dt) const {
    long long steps = step_count(total_tau, record_dt);
    Trajectory traj;
    traj.records.push_back(record(v, 0.0));
    for (long long k = 1; k <= steps; ++k) {
        v = evolve(v, record_dt);
        traj.records.push_back(record(v, static_cast<double>(k) * record_dt));
    }
    return traj;
}

}  // namespace defermion
