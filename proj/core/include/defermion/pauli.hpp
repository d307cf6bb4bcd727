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

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace defermion {

using cplx = std::complex<double>;

/// Largest qubit count a PauliString can address.
inline constexpr std::size_t kMaxPauliQubits = 64;

/// i^k for k taken mod 4.
cplx phase_value(int k);

/// A Pauli operator i^k * P_0 (x) P_1 (x) ... on n <= 64 qubits.
///
/// Qubit q carries letter I/X/Y/Z according to bit q of (x, z):
/// (0,0) I, (1,0) X, (1,1) Y, (0,1) Z. Letters are the genuine Pauli
/// matrices, so a string with k even is Hermitian.
///
/// Text form: optional phase prefix ("", "+", "-", "+i", "-i", "i") followed
/// by one letter per qubit, qubit 0 first.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t n);
    PauliString(std::size_t n, std::uint64_t x, std::uint64_t z, int phase_exponent = 0);

    static PauliString from_letters(std::string_view text);
    static PauliString single(std::size_t n, std::size_t qubit, char letter);

    std::size_t num_qubits() const { return n_; }
    std::uint64_t x_mask() const { return x_; }
    std::uint64_t z_mask() const { return z_; }
    int phase_exponent() const { return k_; }
    cplx phase() const { return phase_value(k_); }
    std::uint64_t support() const { return x_ | z_; }
    int weight() const { return std::popcount(x_ | z_); }
    int num_y() const { return std::popcount(x_ & z_); }
    bool is_identity_letters() const { return (x_ | z_) == 0; }
    bool is_hermitian() const { return (k_ & 1) == 0; }
    bool is_diagonal() const { return x_ == 0; }

    char letter(std::size_t q) const;
    void set_letter(std::size_t q, char letter);

    /// Copy with the phase replaced.
    PauliString with_phase(int phase_exponent) const { return PauliString(n_, x_, z_, phase_exponent); }
    /// Copy with phase +1.
    PauliString letters_only() const { return PauliString(n_, x_, z_, 0); }
    PauliString adjoint() const { return PauliString(n_, x_, z_, -k_); }
    PauliString negated() const { return PauliString(n_, x_, z_, k_ + 2); }

    /// Letters without the phase prefix.
    std::string letters() const;
    /// Full text including the phase prefix.
    std::string to_string() const;

    /// P|b> = amplitude * |b'>.
    std::pair<std::uint64_t, cplx> act(std::uint64_t basis) const;
    /// Phase exponent e with P|b> = i^e |b ^ x>.
    int act_exponent(std::uint64_t basis) const {
        return (k_ + num_y() + 2 * std::popcount(basis & z_)) & 3;
    }

    friend bool operator==(const PauliString&, const PauliString&) = default;

   private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int k_ = 0;
};

/// Exact product a * b (b acts first). Throws on mismatched widths.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// True iff a and b commute. Throws on mismatched widths.
bool commutes(const PauliString& a, const PauliString& b);

struct PauliStringHash {
    std::size_t operator()(const PauliString& p) const noexcept;
};

struct PauliTerm {
    cplx coeff;
    PauliString op;  // phase +1; phases are folded into coeff
};

/// Weighted sum of Pauli strings on a common width.
class PauliSum {
   public:
    PauliSum() = default;
    explicit PauliSum(std::size_t n) : n_(n) {}

    std::size_t num_qubits() const { return n_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Appends coeff * p with the phase of p folded into the coefficient.
    void add(cplx coeff, const PauliString& p);
    void add(const PauliSum& other, cplx scale = 1.0);

    /// Merges duplicate strings (first occurrence keeps its position) and
    /// drops terms with |coeff| < tol.
    void canonicalize(double tol = 1e-15);

    PauliSum scaled(cplx s) const;
    PauliSum adjoint() const;
    bool is_hermitian(double tol = 1e-12) const;

   private:
    std::size_t n_ = 0;
    std::vector<PauliTerm> terms_;
};

PauliSum multiply(const PauliSum& a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator+(const PauliSum& a, const PauliSum& b);
PauliSum operator-(const PauliSum& a, const PauliSum& b);

/// Default cap for dense conversion.
inline constexpr std::size_t kDenseQubitCap = 12;

/// Dense matrix in the global order (qubit q is bit q of the row index).
Eigen::MatrixXcd to_dense(const PauliString& p, std::size_t cap = kDenseQubitCap);
Eigen::MatrixXcd to_dense(const PauliSum& s, std::size_t cap = kDenseQubitCap);

/// Compression of pairs of qubits onto span{|00>, |11>}.
struct MergePlan {
    struct Pair {
        std::size_t a;
        std::size_t b;
        std::size_t merged;
    };
    struct Keep {
        std::size_t from;
        std::size_t to;
    };
    std::size_t out_qubits = 0;
    std::vector<Pair> pairs;
    std::vector<Keep> keep;
    /// Qubits fixed to |0>; their letters must be I or Z and are dropped.
    std::vector<std::size_t> vacuum;
};

/// Maps s through the plan. Throws std::invalid_argument("link parity
/// violated ...") when a pair mixes diagonal and off-diagonal letters, or
/// when a vacuum qubit carries X or Y.
PauliString link_merge(const PauliString& s, const MergePlan& plan);

}  // namespace defermion
