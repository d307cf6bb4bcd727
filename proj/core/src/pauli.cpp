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

#include "defermion/pauli.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace defermion {

namespace {

std::uint64_t width_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_width(std::size_t n) {
    if (n > kMaxPauliQubits) {
        throw std::invalid_argument("PauliString supports at most 64 qubits, got " + std::to_string(n));
    }
}

void check_same(const PauliString& a, const PauliString& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("Pauli width mismatch: " + std::to_string(a.num_qubits()) + " vs " +
                                    std::to_string(b.num_qubits()));
    }
}

}  // namespace

cplx phase_value(int k) {
    switch (k & 3) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
    }
}

PauliString::PauliString(std::size_t n) : n_(n) {
    check_width(n);
}

PauliString::PauliString(std::size_t n, std::uint64_t x, std::uint64_t z, int phase_exponent)
    : n_(n), x_(x), z_(z), k_(phase_exponent & 3) {
    check_width(n);
    if (((x | z) & ~width_mask(n)) != 0) {
        throw std::invalid_argument("Pauli mask has bits beyond width " + std::to_string(n));
    }
}

PauliString PauliString::from_letters(std::string_view text) {
    int k = 0;
    if (text.starts_with("+i")) {
        k = 1;
        text.remove_prefix(2);
    } else if (text.starts_with("-i")) {
        k = 3;
        text.remove_prefix(2);
    } else if (text.starts_with("i")) {
        k = 1;
        text.remove_prefix(1);
    } else if (text.starts_with("-")) {
        k = 2;
        text.remove_prefix(1);
    } else if (text.starts_with("+")) {
        text.remove_prefix(1);
    }
    PauliString p(text.size());
    for (std::size_t q = 0; q < text.size(); ++q) {
        p.set_letter(q, text[q]);
    }
    p.k_ = k;
    return p;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, char letter) {
    PauliString p(n);
    p.set_letter(qubit, letter);
    return p;
}

char PauliString::letter(std::size_t q) const {
    bool x = (x_ >> q) & 1;
    bool z = (z_ >> q) & 1;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliString::set_letter(std::size_t q, char letter) {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " outside width " + std::to_string(n_));
    }
    std::uint64_t bit = std::uint64_t{1} << q;
    x_ &= ~bit;
    z_ &= ~bit;
    switch (letter) {
        case 'I':
        case '_':
            break;
        case 'X':
            x_ |= bit;
            break;
        case 'Y':
            x_ |= bit;
            z_ |= bit;
            break;
        case 'Z':
            z_ |= bit;
            break;
        default:
            throw std::invalid_argument(std::string("invalid Pauli letter '") + letter + "'");
    }
}

std::string PauliString::letters() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) {
        s[q] = letter(q);
    }
    return s;
}

std::string PauliString::to_string() const {
    static const char* const kPrefix[4] = {"", "+i", "-", "-i"};
    return kPrefix[k_] + letters();
}

std::pair<std::uint64_t, cplx> PauliString::act(std::uint64_t basis) const {
    return {basis ^ x_, phase_value(act_exponent(basis))};
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    check_same(a, b);
    std::uint64_t x = a.x_mask() ^ b.x_mask();
    std::uint64_t z = a.z_mask() ^ b.z_mask();
    int k = a.phase_exponent() + b.phase_exponent() + a.num_y() + b.num_y() +
            2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(x & z);
    return PauliString(a.num_qubits(), x, z, k);
}

bool commutes(const PauliString& a, const PauliString& b) {
    check_same(a, b);
    int c = std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask());
    return (c & 1) == 0;
}

std::size_t PauliStringHash::operator()(const PauliString& p) const noexcept {
    std::uint64_t h = p.x_mask() * 0x9E3779B97F4A7C15ULL;
    h ^= p.z_mask() + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(p.phase_exponent()) << 1;
    return static_cast<std::size_t>(h);
}

void PauliSum::add(cplx coeff, const PauliString& p) {
    if (terms_.empty() && n_ == 0) {
        n_ = p.num_qubits();
    }
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("PauliSum width mismatch");
    }
    terms_.push_back({coeff * p.phase(), p.letters_only()});
}

void PauliSum::add(const PauliSum& other, cplx scale) {
    for (const auto& t : other.terms_) {
        add(scale * t.coeff, t.op);
    }
}

void PauliSum::canonicalize(double tol) {
    std::unordered_map<PauliString, std::size_t, PauliStringHash> index;
    std::vector<PauliTerm> merged;
    for (const auto& t : terms_) {
        auto [it, inserted] = index.emplace(t.op, merged.size());
        if (inserted) {
            merged.push_back(t);
        } else {
            merged[it->second].coeff += t.coeff;
        }
    }
    terms_.clear();
    for (auto& t : merged) {
        if (std::abs(t.coeff) >= tol) {
            terms_.push_back(t);
        }
    }
}

PauliSum PauliSum::scaled(cplx s) const {
    PauliSum out = *this;
    for (auto& t : out.terms_) {
        t.coeff *= s;
    }
    return out;
}

PauliSum PauliSum::adjoint() const {
    PauliSum out = *this;
    for (auto& t : out.terms_) {
        t.coeff = std::conj(t.coeff);
    }
    return out;
}

bool PauliSum::is_hermitian(double tol) const {
    PauliSum c = *this;
    c.canonicalize(0.0);
    for (const auto& t : c.terms_) {
        if (std::abs(t.coeff.imag()) > tol) {
            return false;
        }
    }
    return true;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("PauliSum width mismatch");
    }
    PauliSum out(a.num_qubits());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            out.add(ta.coeff * tb.coeff, multiply(ta.op, tb.op));
        }
    }
    out.canonicalize();
    return out;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    return multiply(a, b);
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
    PauliSum out = a;
    out.add(b);
    out.canonicalize();
    return out;
}

PauliSum operator-(const PauliSum& a, const PauliSum& b) {
    PauliSum out = a;
    out.add(b, -1.0);
    out.canonicalize();
    return out;
}

Eigen::MatrixXcd to_dense(const PauliString& p, std::size_t cap) {
    if (p.num_qubits() > cap) {
        throw std::invalid_argument("to_dense: " + std::to_string(p.num_qubits()) + " qubits exceeds cap " +
                                    std::to_string(cap));
    }
    std::size_t dim = std::size_t{1} << p.num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        auto [to, amp] = p.act(b);
        m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(b)) = amp;
    }
    return m;
}

Eigen::MatrixXcd to_dense(const PauliSum& s, std::size_t cap) {
    if (s.num_qubits() > cap) {
        throw std::invalid_argument("to_dense: " + std::to_string(s.num_qubits()) + " qubits exceeds cap " +
                                    std::to_string(cap));
    }
    std::size_t dim = std::size_t{1} << s.num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto& t : s.terms()) {
        for (std::uint64_t b = 0; b < dim; ++b) {
            auto [to, amp] = t.op.act(b);
            m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(b)) += t.coeff * amp;
        }
    }
    return m;
}

PauliString link_merge(const PauliString& s, const MergePlan& plan) {
    std::size_t n = s.num_qubits();
    std::uint64_t seen = 0;
    auto claim = [&](std::size_t q) {
        if (q >= n) {
            throw std::invalid_argument("merge plan references qubit " + std::to_string(q) + " outside width " +
                                        std::to_string(n));
        }
        std::uint64_t bit = std::uint64_t{1} << q;
        if (seen & bit) {
            throw std::invalid_argument("merge plan uses qubit " + std::to_string(q) + " twice");
        }
        seen |= bit;
    };
    PauliString out(plan.out_qubits);
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int k = s.phase_exponent();
    for (const auto& p : plan.pairs) {
        claim(p.a);
        claim(p.b);
        bool xa = (s.x_mask() >> p.a) & 1;
        bool xb = (s.x_mask() >> p.b) & 1;
        bool za = (s.z_mask() >> p.a) & 1;
        bool zb = (s.z_mask() >> p.b) & 1;
        if (xa != xb) {
            throw std::invalid_argument(std::string("link parity violated: letters ") + s.letter(p.a) +
                                        s.letter(p.b) + " on qubits " + std::to_string(p.a) + "," +
                                        std::to_string(p.b));
        }
        if (xa) {
            x |= std::uint64_t{1} << p.merged;
            if (za && zb) {
                k += 2;
            }
        }
        if (za != zb) {
            z |= std::uint64_t{1} << p.merged;
        }
    }
    for (const auto& kq : plan.keep) {
        claim(kq.from);
        x |= static_cast<std::uint64_t>((s.x_mask() >> kq.from) & 1) << kq.to;
        z |= static_cast<std::uint64_t>((s.z_mask() >> kq.from) & 1) << kq.to;
    }
    for (std::size_t q : plan.vacuum) {
        claim(q);
        if ((s.x_mask() >> q) & 1) {
            throw std::invalid_argument(std::string("link parity violated: letter ") + s.letter(q) +
                                        " on vacuum rishon " + std::to_string(q));
        }
    }
    if (seen != width_mask(n)) {
        throw std::invalid_argument("merge plan does not cover every input qubit");
    }
    return PauliString(plan.out_qubits, x, z, k);
}

}  // namespace defermion
