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

#include "defermion/sector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace defermion {

namespace {

struct Row {
    std::uint64_t mask;
    bool rhs;
};

int top_bit(std::uint64_t m) {
    return 63 - std::countl_zero(m);
}

}  // namespace

SectorBasis::SectorBasis(std::size_t num_qubits, const std::vector<PauliString>& stabilizers, int max_log2_dim)
    : n_(num_qubits), stabilizers_(stabilizers) {
    for (std::size_t i = 0; i < stabilizers.size(); ++i) {
        const PauliString& s = stabilizers[i];
        if (s.num_qubits() != n_) {
            throw std::invalid_argument("stabilizer width mismatch");
        }
        if (!s.is_hermitian()) {
            throw std::invalid_argument("stabilizer is not Hermitian: " + s.to_string());
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!commutes(s, stabilizers[j])) {
                throw std::invalid_argument("stabilizers do not commute: " + s.to_string() + " and " +
                                            stabilizers[j].to_string());
            }
        }
        if (s.is_diagonal()) {
            diagonal_.push_back({s.z_mask(), s.phase_exponent() == 2});
        } else {
            generators_.push_back(s);
        }
    }

    // Reduced row echelon form of the generators on their X masks.
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if ((generators_[i].x_mask() >> pivots_[j]) & 1) {
                generators_[i] = generators_[j] * generators_[i];
            }
        }
        if (generators_[i].x_mask() == 0) {
            throw std::invalid_argument("stabilizer generators have dependent X masks");
        }
        int p = top_bit(generators_[i].x_mask());
        pivots_.push_back(p);
        for (std::size_t j = 0; j < i; ++j) {
            if ((generators_[j].x_mask() >> p) & 1) {
                generators_[j] = generators_[i] * generators_[j];
            }
        }
    }

    std::size_t m = generators_.size();
    group_.reserve(std::size_t{1} << m);
    for (std::size_t sub = 0; sub < (std::size_t{1} << m); ++sub) {
        PauliString g(n_);
        for (std::size_t j = 0; j < m; ++j) {
            if ((sub >> j) & 1) {
                g = generators_[j] * g;
            }
        }
        group_.push_back(g);
    }

    // Representatives: diagonal constraints plus cleared pivot bits.
    std::vector<Row> rows;
    for (const auto& [mask, odd] : diagonal_) {
        rows.push_back({mask, odd});
    }
    for (int p : pivots_) {
        rows.push_back({std::uint64_t{1} << p, false});
    }
    std::vector<Row> echelon;
    std::vector<int> lead;
    for (Row r : rows) {
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            if ((r.mask >> lead[k]) & 1) {
                r.mask ^= echelon[k].mask;
                r.rhs ^= echelon[k].rhs;
            }
        }
        if (r.mask == 0) {
            if (r.rhs) {
                return;  // inconsistent constraints: empty sector
            }
            continue;
        }
        int p = top_bit(r.mask);
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            if ((echelon[k].mask >> p) & 1) {
                echelon[k].mask ^= r.mask;
                echelon[k].rhs ^= r.rhs;
            }
        }
        echelon.push_back(r);
        lead.push_back(p);
    }
    std::uint64_t lead_mask = 0;
    for (int p : lead) {
        lead_mask |= std::uint64_t{1} << p;
    }
    std::vector<int> free;
    for (std::size_t q = 0; q < n_; ++q) {
        if (!((lead_mask >> q) & 1)) {
            free.push_back(static_cast<int>(q));
        }
    }
    if (static_cast<int>(free.size()) > max_log2_dim) {
        throw std::invalid_argument("sector dimension 2^" + std::to_string(free.size()) + " exceeds cap 2^" +
                                    std::to_string(max_log2_dim));
    }
    std::size_t count = std::size_t{1} << free.size();
    reps_.resize(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::uint64_t b = 0;
        for (std::size_t k = 0; k < free.size(); ++k) {
            b |= static_cast<std::uint64_t>((t >> k) & 1) << free[k];
        }
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            bool bit = echelon[k].rhs ^ static_cast<bool>(std::popcount(b & echelon[k].mask) & 1);
            b |= static_cast<std::uint64_t>(bit) << lead[k];
        }
        reps_[t] = b;
    }
    std::sort(reps_.begin(), reps_.end());
}

bool SectorBasis::satisfies_diagonal(std::uint64_t basis) const {
    for (const auto& [mask, odd] : diagonal_) {
        if (static_cast<bool>(std::popcount(basis & mask) & 1) != odd) {
            return false;
        }
    }
    return true;
}

std::optional<std::size_t> SectorBasis::index_of(std::uint64_t rep) const {
    auto it = std::lower_bound(reps_.begin(), reps_.end(), rep);
    if (it == reps_.end() || *it != rep) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - reps_.begin());
}

std::pair<std::uint64_t, cplx> SectorBasis::canonicalize(std::uint64_t basis) const {
    int e = 0;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
        if ((basis >> pivots_[j]) & 1) {
            e += generators_[j].act_exponent(basis);
            basis ^= generators_[j].x_mask();
        }
    }
    return {basis, phase_value(e)};
}

bool SectorBasis::is_symmetric(const PauliString& p) const {
    for (const auto& s : stabilizers_) {
        if (!commutes(p, s)) {
            return false;
        }
    }
    return true;
}

SparseMatrix SectorBasis::matrix(const PauliSum& op) const {
    if (op.num_qubits() != n_) {
        throw std::invalid_argument("operator width mismatch");
    }
    for (const auto& t : op.terms()) {
        if (!is_symmetric(t.op)) {
            throw std::invalid_argument("operator term does not commute with the stabilizers: " + t.op.to_string());
        }
    }
    using Triplet = Eigen::Triplet<cplx, std::int64_t>;
    std::vector<Triplet> entries;
    entries.reserve(reps_.size() * op.size());
    for (std::size_t k = 0; k < reps_.size(); ++k) {
        for (const auto& t : op.terms()) {
            std::uint64_t r = reps_[k];
            cplx amp = t.coeff * phase_value(t.op.act_exponent(r));
            auto [s, w] = canonicalize(r ^ t.op.x_mask());
            auto j = index_of(s);
            if (!j) {
                throw std::logic_error("operator maps outside the sector");
            }
            entries.emplace_back(static_cast<std::int64_t>(*j), static_cast<std::int64_t>(k), amp * w);
        }
    }
    auto d = static_cast<std::int64_t>(reps_.size());
    SparseMatrix m(d, d);
    m.setFromTriplets(entries.begin(), entries.end());
    m.prune(cplx(0.0), 0.0);
    return m;
}

Eigen::VectorXcd SectorBasis::apply(const PauliString& p, const Eigen::VectorXcd& v) const {
    if (!is_symmetric(p)) {
        throw std::invalid_argument("operator does not commute with the stabilizers: " + p.to_string());
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (std::size_t k = 0; k < reps_.size(); ++k) {
        std::uint64_t r = reps_[k];
        auto [s, w] = canonicalize(r ^ p.x_mask());
        auto j = index_of(s);
        if (!j) {
            throw std::logic_error("operator maps outside the sector");
        }
        out[static_cast<Eigen::Index>(*j)] += phase_value(p.act_exponent(r)) * w * v[static_cast<Eigen::Index>(k)];
    }
    return out;
}

cplx SectorBasis::expectation(const PauliString& p, const Eigen::VectorXcd& v) const {
    for (const auto& g : generators_) {
        if (!commutes(p, g)) {
            return 0.0;
        }
    }
    for (const auto& [mask, odd] : diagonal_) {
        PauliString z(n_, 0, mask);
        if (!commutes(p, z)) {
            return 0.0;
        }
    }
    return v.dot(apply(p, v));
}

Eigen::VectorXcd SectorBasis::embed(const Eigen::VectorXcd& v) const {
    if (n_ > 30) {
        throw std::invalid_argument("embed: full space of " + std::to_string(n_) + " qubits is too large");
    }
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_));
    double norm = 1.0 / std::sqrt(static_cast<double>(group_.size()));
    for (std::size_t k = 0; k < reps_.size(); ++k) {
        for (const auto& g : group_) {
            auto [b, amp] = g.act(reps_[k]);
            full[static_cast<Eigen::Index>(b)] += amp * norm * v[static_cast<Eigen::Index>(k)];
        }
    }
    return full;
}

Eigen::VectorXcd SectorBasis::project(const Eigen::VectorXcd& full, double* outside) const {
    if (full.size() != static_cast<Eigen::Index>(std::size_t{1} << n_)) {
        throw std::invalid_argument("project: vector size does not match qubit count");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(reps_.size()));
    double norm = 1.0 / std::sqrt(static_cast<double>(group_.size()));
    for (std::size_t k = 0; k < reps_.size(); ++k) {
        cplx a = 0.0;
        for (const auto& g : group_) {
            auto [b, amp] = g.act(reps_[k]);
            a += std::conj(amp) * full[static_cast<Eigen::Index>(b)];
        }
        v[static_cast<Eigen::Index>(k)] = a * norm;
    }
    if (outside) {
        // Residual summed term by term; the difference of squared norms
        // loses half the digits.
        double rest = 0.0;
        for (Eigen::Index b = 0; b < full.size(); ++b) {
            if (!satisfies_diagonal(static_cast<std::uint64_t>(b))) {
                rest += std::norm(full[b]);
            }
        }
        for (std::size_t k = 0; k < reps_.size(); ++k) {
            for (const auto& g : group_) {
                auto [b, amp] = g.act(reps_[k]);
                rest += std::norm(full[static_cast<Eigen::Index>(b)] - amp * norm * v[static_cast<Eigen::Index>(k)]);
            }
        }
        *outside = std::sqrt(rest);
    }
    return v;
}

Eigen::VectorXcd SectorBasis::basis_state(std::uint64_t b) const {
    if (!satisfies_diagonal(b)) {
        throw std::invalid_argument("basis state violates a diagonal stabilizer");
    }
    auto [s, w] = canonicalize(b);
    auto k = index_of(s);
    if (!k) {
        throw std::logic_error("representative missing from sector");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(reps_.size()));
    v[static_cast<Eigen::Index>(*k)] = w;
    return v;
}

}  // namespace defermion
