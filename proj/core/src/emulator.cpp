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

#include "defermion/emulator.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "parallel.hpp"

namespace defermion {

namespace {

constexpr std::size_t kGrain = std::size_t{1} << 14;

/// Inserts a zero at bit position q of i.
inline std::uint64_t insert_zero(std::uint64_t i, std::size_t q) {
    std::uint64_t low = i & ((std::uint64_t{1} << q) - 1);
    return ((i ^ low) << 1) | low;
}

/// Applies the 2x2 matrix [[a, b], [c, d]] to qubit q.
void apply_1q(Eigen::VectorXcd& v, std::size_t q, cplx a, cplx b, cplx c, cplx d) {
    std::uint64_t bit = std::uint64_t{1} << q;
    std::size_t half = static_cast<std::size_t>(v.size()) / 2;
    cplx* data = v.data();
    detail::parallel_for(half, kGrain, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t i0 = insert_zero(i, q);
            std::uint64_t i1 = i0 | bit;
            cplx x0 = data[i0];
            cplx x1 = data[i1];
            data[i0] = a * x0 + b * x1;
            data[i1] = c * x0 + d * x1;
        }
    });
}

}  // namespace

StateVector::StateVector(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {
    if (n > kMaxStateQubits) {
        throw std::invalid_argument("statevector of " + std::to_string(n) + " qubits exceeds the cap of " +
                                    std::to_string(kMaxStateQubits));
    }
    amp_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    amp_[0] = 1.0;
}

StateVector::StateVector(const Eigen::VectorXcd& amplitudes, std::uint64_t seed) : amp_(amplitudes), rng_(seed) {
    auto size = static_cast<std::uint64_t>(amplitudes.size());
    if (size == 0 || !std::has_single_bit(size)) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    n_ = static_cast<std::size_t>(std::countr_zero(size));
    if (n_ > kMaxStateQubits) {
        throw std::invalid_argument("statevector exceeds the qubit cap");
    }
}

void StateVector::check(std::size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " outside register of " + std::to_string(n_));
    }
}

double StateVector::norm() const {
    return amp_.norm();
}

void StateVector::apply_h(std::size_t q) {
    check(q);
    const double s = 1.0 / std::numbers::sqrt2;
    apply_1q(amp_, q, s, s, s, -s);
}

void StateVector::apply_x(std::size_t q) {
    check(q);
    apply_1q(amp_, q, 0.0, 1.0, 1.0, 0.0);
}

void StateVector::apply_rz(std::size_t q, double angle) {
    check(q);
    cplx m = std::polar(1.0, -angle / 2);
    cplx p = std::polar(1.0, angle / 2);
    std::uint64_t bit = std::uint64_t{1} << q;
    cplx* data = amp_.data();
    detail::parallel_for(static_cast<std::size_t>(amp_.size()), kGrain, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            data[i] *= (i & bit) ? p : m;
        }
    });
}

void StateVector::apply_rx(std::size_t q, double angle) {
    check(q);
    cplx c = std::cos(angle / 2);
    cplx s = cplx(0.0, -std::sin(angle / 2));
    apply_1q(amp_, q, c, s, s, c);
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    check(control);
    check(target);
    if (control == target) {
        throw std::invalid_argument("CNOT control equals target");
    }
    std::uint64_t cb = std::uint64_t{1} << control;
    std::uint64_t tb = std::uint64_t{1} << target;
    cplx* data = amp_.data();
    detail::parallel_for(static_cast<std::size_t>(amp_.size()) / 2, kGrain, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t i0 = insert_zero(i, target);
            if (i0 & cb) {
                std::swap(data[i0], data[i0 | tb]);
            }
        }
    });
}

void StateVector::apply_pauli_rotation(const PauliString& p, double theta) {
    if (p.num_qubits() > n_) {
        throw std::invalid_argument("Pauli string wider than the register");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("rotation generator must be Hermitian: " + p.to_string());
    }
    const double c = std::cos(theta);
    const cplx ms = cplx(0.0, -std::sin(theta));
    cplx w[4];
    for (int k = 0; k < 4; ++k) {
        w[k] = ms * phase_value(k);
    }
    std::uint64_t x = p.x_mask();
    cplx* data = amp_.data();
    if (x == 0) {
        detail::parallel_for(static_cast<std::size_t>(amp_.size()), kGrain, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t b = lo; b < hi; ++b) {
                data[b] *= c + w[p.act_exponent(b)];
            }
        });
        return;
    }
    auto pivot = static_cast<std::size_t>(63 - std::countl_zero(x));
    detail::parallel_for(static_cast<std::size_t>(amp_.size()) / 2, kGrain, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t b = insert_zero(i, pivot);
            std::uint64_t b2 = b ^ x;
            cplx v0 = data[b];
            cplx v1 = data[b2];
            data[b2] = c * v1 + w[p.act_exponent(b)] * v0;
            data[b] = c * v0 + w[p.act_exponent(b2)] * v1;
        }
    });
}

void StateVector::apply_pauli(const PauliString& p) {
    if (p.num_qubits() > n_) {
        throw std::invalid_argument("Pauli string wider than the register");
    }
    std::uint64_t x = p.x_mask();
    cplx* data = amp_.data();
    if (x == 0) {
        detail::parallel_for(static_cast<std::size_t>(amp_.size()), kGrain, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t b = lo; b < hi; ++b) {
                data[b] *= phase_value(p.act_exponent(b));
            }
        });
        return;
    }
    auto pivot = static_cast<std::size_t>(63 - std::countl_zero(x));
    detail::parallel_for(static_cast<std::size_t>(amp_.size()) / 2, kGrain, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t b = insert_zero(i, pivot);
            std::uint64_t b2 = b ^ x;
            cplx v0 = data[b];
            cplx v1 = data[b2];
            data[b2] = phase_value(p.act_exponent(b)) * v0;
            data[b] = phase_value(p.act_exponent(b2)) * v1;
        }
    });
}

double StateVector::probability(std::size_t q, int outcome) const {
    check(q);
    std::uint64_t bit = std::uint64_t{1} << q;
    std::uint64_t want = outcome ? bit : 0;
    const cplx* data = amp_.data();
    double total = detail::parallel_sum<double>(static_cast<std::size_t>(amp_.size()), kGrain,
                                                [&](std::size_t lo, std::size_t hi) {
                                                    double s = 0.0;
                                                    for (std::size_t i = lo; i < hi; ++i) {
                                                        if ((i & bit) == want) {
                                                            s += std::norm(data[i]);
                                                        }
                                                    }
                                                    return s;
                                                });
    return total / amp_.squaredNorm();
}

void StateVector::project(std::size_t q, int outcome) {
    double p = probability(q, outcome);
    if (p <= 1e-12) {
        throw ProtocolError("post-selection impossible: outcome " + std::to_string(outcome) + " on qubit " +
                            std::to_string(q) + " has probability " + std::to_string(p));
    }
    std::uint64_t bit = std::uint64_t{1} << q;
    std::uint64_t want = outcome ? bit : 0;
    double scale = 1.0 / std::sqrt(p * amp_.squaredNorm());
    cplx* data = amp_.data();
    detail::parallel_for(static_cast<std::size_t>(amp_.size()), kGrain, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            data[i] = ((i & bit) == want) ? data[i] * scale : cplx(0.0);
        }
    });
}

int StateVector::measure(std::size_t q) {
    double p1 = probability(q, 1);
    double r = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    int outcome = r < p1 ? 1 : 0;
    project(q, outcome);
    return outcome;
}

cplx StateVector::expectation(const PauliString& p) const {
    if (p.num_qubits() > n_) {
        throw std::invalid_argument("Pauli string wider than the register");
    }
    std::uint64_t x = p.x_mask();
    const cplx* data = amp_.data();
    cplx total = detail::parallel_sum<cplx>(static_cast<std::size_t>(amp_.size()), kGrain,
                                            [&](std::size_t lo, std::size_t hi) {
                                                cplx s = 0.0;
                                                for (std::size_t b = lo; b < hi; ++b) {
                                                    s += std::conj(data[b ^ x]) *
                                                         phase_value(p.act_exponent(b)) * data[b];
                                                }
                                                return s;
                                            });
    return total / amp_.squaredNorm();
}

double StateVector::expectation(const PauliSum& obs) const {
    if (!obs.is_hermitian()) {
        throw std::invalid_argument("observable is not Hermitian");
    }
    cplx total = 0.0;
    for (const auto& t : obs.terms()) {
        total += t.coeff * expectation(t.op);
    }
    return total.real();
}

void StateVector::add_qubit() {
    if (n_ + 1 > kMaxStateQubits) {
        throw std::invalid_argument("cannot add a qubit beyond the cap");
    }
    Eigen::Index old = amp_.size();
    amp_.conservativeResize(2 * old);
    amp_.tail(old).setZero();
    ++n_;
}

void StateVector::remove_qubit() {
    if (n_ == 0) {
        throw std::invalid_argument("no qubit to remove");
    }
    Eigen::Index half = amp_.size() / 2;
    double upper = amp_.tail(half).norm();
    if (upper > 1e-10) {
        throw ProtocolError("highest qubit is not in |0> (weight " + std::to_string(upper) + ")");
    }
    amp_.conservativeResize(half);
    --n_;
}

std::vector<std::uint8_t> run(const Circuit& circuit, StateVector& state, const RunOptions& opts) {
    if (circuit.width() != state.num_qubits()) {
        throw std::invalid_argument("circuit width " + std::to_string(circuit.width()) +
                                    " does not match the register of " + std::to_string(state.num_qubits()));
    }
    std::vector<std::uint8_t> bits(circuit.classical_bits(), 0);
    const auto& gates = circuit.gates();
    const auto& blocks = circuit.blocks();
    std::size_t next_block = 0;
    const double s = 1.0 / std::numbers::sqrt2;
    const cplx is(0.0, s);
    std::size_t i = 0;
    while (i < gates.size()) {
        if (opts.fuse_blocks) {
            while (next_block < blocks.size() && blocks[next_block].begin < i) {
                ++next_block;
            }
            if (next_block < blocks.size() && blocks[next_block].begin == i &&
                blocks[next_block].end > blocks[next_block].begin) {
                const PauliBlock& b = blocks[next_block];
                state.apply_pauli_rotation(b.op, b.theta);
                i = b.end;
                ++next_block;
                continue;
            }
        }
        const Gate& g = gates[i++];
        if (g.condition >= 0 && !bits[static_cast<std::size_t>(g.condition)]) {
            continue;
        }
        switch (g.kind) {
            case GateKind::H:
                state.apply_h(g.q0);
                break;
            case GateKind::X:
                state.apply_x(g.q0);
                break;
            case GateKind::CNOT:
                state.apply_cnot(g.q0, g.q1);
                break;
            case GateKind::RZ:
                state.apply_rz(g.q0, g.angle);
                break;
            case GateKind::RXM:
                apply_1q(state.amplitudes(), g.q0, s, is, is, s);
                break;
            case GateKind::RXP:
                apply_1q(state.amplitudes(), g.q0, s, -is, -is, s);
                break;
            case GateKind::MEASURE:
                bits[g.bit] = static_cast<std::uint8_t>(state.measure(g.q0));
                break;
        }
    }
    return bits;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit, std::size_t cap) {
    if (!circuit.is_unitary()) {
        throw std::invalid_argument("circuit contains measurements or conditional gates");
    }
    if (circuit.width() > cap) {
        throw std::invalid_argument("circuit too wide for a dense unitary");
    }
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << circuit.width());
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e[c] = 1.0;
        StateVector sv(e);
        run(circuit, sv);
        u.col(c) = sv.amplitudes();
    }
    return u;
}

}  // namespace defermion
