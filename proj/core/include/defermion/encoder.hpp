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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "defermion/lattice.hpp"
#include "defermion/pauli.hpp"

namespace defermion {

struct ModelParams {
    double t = 0.1;
    double U = 1.0;
    double alpha_p = 20.0;
    double alpha_b = 20.0;
    double mu_tilde = 20.0;
    int n_target = 0;

    /// Throws std::invalid_argument on non-finite values or negative penalties.
    void validate() const;
};

/// Roles inside a dressed site: two matter modes and four rishons.
enum class DressedRole : std::uint8_t { U, D, W, S, E, N };

/// Six qubits per site, site-major, before link merging.
///
/// Even sites order their qubits u d w s e n, odd sites d u s w n e.
class DressedLayout {
   public:
    explicit DressedLayout(const LatticeSpec& spec);

    const LatticeSpec& spec() const { return spec_; }
    std::size_t num_qubits() const { return 6 * spec_.num_sites(); }
    static std::size_t position(Site s, DressedRole role);
    std::size_t qubit(Site s, DressedRole role) const;

    /// Plan compressing every link's rishon pair into the merged layout's
    /// link qubit. Boundary rishons are vacuum except the (0,0) south rishon
    /// when `merged` has an extra rishon.
    MergePlan merge_plan(const QubitLayout& merged) const;

   private:
    LatticeSpec spec_;
};

DressedRole rishon_role(Rishon r);

/// A Majorana operator of a dressed site.
struct Majorana {
    enum class Kind : std::uint8_t { Dx, Dy, Gamma };
    Site site;
    Kind kind = Kind::Dx;
    Flavor flavor = Flavor::Up;
    Rishon rishon = Rishon::W;

    static Majorana dx(Site s, Flavor f) { return {s, Kind::Dx, f, Rishon::W}; }
    static Majorana dy(Site s, Flavor f) { return {s, Kind::Dy, f, Rishon::W}; }
    static Majorana gamma(Site s, Rishon r) { return {s, Kind::Gamma, Flavor::Up, r}; }
};

/// Local Pauli form of a single Majorana: X (Y for d_y) on its own qubit and
/// Z on the later qubits of the same dressed site.
PauliString majorana_pauli(const DressedLayout& layout, const Majorana& m);

/// Pauli form of the ordered fermionic product m[0] m[1] ... m[k-1].
///
/// The product is regrouped site by site, tracking the reordering sign, and
/// each group is mapped through its local form. Every site must hold an even
/// number of factors.
PauliString majorana_product(const DressedLayout& layout, std::span<const Majorana> ms);

/// Hopping of flavor f across a link, before merging. Two strings.
PauliSum hopping_term_dressed(const DressedLayout& layout, const Link& link, Flavor f, double t);
PauliSum hopping_term(const QubitLayout& layout, const Link& link, Flavor f, double t);

/// (U/4) Z_u Z_d.
PauliSum onsite_term(const QubitLayout& layout, Site s, double U);

PauliString vertex_stabilizer(const QubitLayout& layout, Site s);

/// Product of the eight corner Majoranas, i gamma_from gamma_to per link.
PauliString plaquette_stabilizer_dressed(const DressedLayout& layout, const Plaquette& p);
PauliString plaquette_stabilizer(const QubitLayout& layout, const Plaquette& p);

/// -alpha_p (S - 1).
PauliSum plaquette_penalty(const QubitLayout& layout, const Plaquette& p, double alpha_p);

/// mu (sum_j (n_ju + n_jd) - N)^2 with n = (1 - Z)/2.
PauliSum number_penalty(const QubitLayout& layout, double mu_tilde, int n_target);

struct StabilizerSet {
    std::vector<PauliString> vertex;     // one per site, site order
    std::vector<PauliString> plaquette;  // one per plaquette, plaquette order

    std::vector<PauliString> all() const;
};

StabilizerSet build_stabilizers(const QubitLayout& layout);

enum class TermKind : std::uint8_t { Onsite, Hopping, PlaquettePenalty, NumberPenalty };

struct TermTag {
    TermKind kind = TermKind::Onsite;
    std::size_t index = 0;  // site, link or plaquette index
    Flavor flavor = Flavor::Up;
};

struct EncodedTerm {
    double coeff = 0.0;
    PauliString op;  // phase +1
    TermTag tag;
};

/// Real-weighted Pauli strings with provenance. Term order is on-site by
/// site, hopping by link then flavor, plaquette penalties, number penalty.
struct EncodedHamiltonian {
    std::size_t num_qubits = 0;
    std::vector<EncodedTerm> terms;

    PauliSum to_sum() const;
    /// Sum of identity-string coefficients.
    double constant() const;
};

EncodedHamiltonian build_hamiltonian(const QubitLayout& layout, const ModelParams& params, bool include_penalties);

enum class ExcitationKind : std::uint8_t { Spin, Charge };

/// Spin: X_u X_d. Charge: X_u Z_d Z_w Y_s at (0,0), s being the extra rishon.
PauliString excitation_operator(const QubitLayout& layout, ExcitationKind kind, Site s);

std::string to_string(TermKind k);
std::string to_string(ExcitationKind k);

struct WeightReport {
    int hopping_spinful = 0;
    int hopping_single_species = 0;
    int onsite = 0;
    int vertex_min = 0;
    int vertex_max = 0;
    int plaquette = 0;
    int stabilizer_single_species = 0;
    int parity_weight = 1;
    std::size_t qubits = 0;
    double qubit_fermion_ratio = 0.0;
    double qubit_fermion_ratio_single_species = 0.0;
};

/// Measured maximum weights. Throws std::logic_error if a stabilizer exceeds
/// weight 6 or the on-site weight is not 2.
WeightReport weight_report(const QubitLayout& layout, const ModelParams& params);

}  // namespace defermion
