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

#include "defermion/encoder.hpp"

#include <array>

#include <gtest/gtest.h>

using namespace defermion;

namespace {

// Builds a dressed string from per-site 6-letter blocks given in site order.
PauliString dressed_string(const DressedLayout& d, const std::vector<std::pair<Site, std::string>>& blocks) {
    PauliString p(d.num_qubits());
    for (const auto& [site, letters] : blocks) {
        std::size_t base = d.qubit(site, DressedRole::U) - DressedLayout::position(site, DressedRole::U);
        for (std::size_t k = 0; k < 6; ++k) {
            p.set_letter(base + k, letters[k]);
        }
    }
    return p;
}

}  // namespace

TEST(Encoder, MatterMajoranaStrings) {
    DressedLayout d({2, 1});
    Site e{0, 0};
    EXPECT_EQ(majorana_pauli(d, Majorana::dx(e, Flavor::Up)).to_string().substr(0, 6), "XZZZZZ");
    EXPECT_EQ(majorana_pauli(d, Majorana::dx(e, Flavor::Down)).to_string().substr(0, 6), "IXZZZZ");
    EXPECT_EQ(majorana_pauli(d, Majorana::dy(e, Flavor::Up)).to_string().substr(0, 6), "YZZZZZ");
    EXPECT_EQ(majorana_pauli(d, Majorana::dy(e, Flavor::Down)).to_string().substr(0, 6), "IYZZZZ");
    // Odd site: u and d swap places.
    EXPECT_EQ(majorana_pauli(d, Majorana::dx(Site{1, 0}, Flavor::Up)).to_string(), "IIIIIIIXZZZZ");
}

TEST(Encoder, RishonMajoranaStrings) {
    DressedLayout d({2, 1});
    EXPECT_EQ(majorana_pauli(d, Majorana::gamma(Site{0, 0}, Rishon::E)).to_string(), "IIIIXZIIIIII");
    EXPECT_EQ(majorana_pauli(d, Majorana::gamma(Site{0, 0}, Rishon::W)).to_string(), "IIXZZZIIIIII");
    EXPECT_EQ(majorana_pauli(d, Majorana::gamma(Site{1, 0}, Rishon::W)).to_string(), "IIIIIIIIIXZZ");
}

TEST(Encoder, HoppingProductRow) {
    DressedLayout d({2, 1});
    std::array<Majorana, 4> ms = {Majorana::dx(Site{0, 0}, Flavor::Up), Majorana::gamma(Site{0, 0}, Rishon::E),
                                  Majorana::gamma(Site{1, 0}, Rishon::W), Majorana::dy(Site{1, 0}, Flavor::Up)};
    PauliString p = majorana_product(d, ms);
    // X Z Z Z iY I | I Y Z -iY I I; the two factors of i cancel.
    EXPECT_EQ(p.to_string(), "XZZZYIIYZYII");
}

TEST(Encoder, HoppingPairStrings) {
    DressedLayout d({2, 1});
    PauliSum h = hopping_term_dressed(d, Link{Site{0, 0}, Direction::X}, Flavor::Up, 2.0);
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h.terms()[0].op.to_string(), "XZZZYIIYZYII");
    EXPECT_EQ(h.terms()[0].coeff, cplx(1.0));
    EXPECT_EQ(h.terms()[1].op.to_string(), "YZZZYIIXZYII");
    EXPECT_EQ(h.terms()[1].coeff, cplx(-1.0));
}

TEST(Encoder, OnsiteQuarterZZ) {
    QubitLayout l({2, 2}, false);
    PauliSum s = onsite_term(l, Site{1, 0}, 1.0);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.terms()[0].coeff, cplx(0.25));
    EXPECT_EQ(s.terms()[0].op.to_string(), "IIZZIIIIIIII");
    EXPECT_TRUE(onsite_term(l, Site{0, 0}, 0.0).empty());
}

TEST(Encoder, VertexIsZOnMatterAndIncidentLinks) {
    QubitLayout l({2, 2}, false);
    for (const Site& s : l.geometry().sites) {
        PauliString v = vertex_stabilizer(l, s);
        EXPECT_TRUE(v.is_diagonal());
        EXPECT_EQ(v.phase_exponent(), 0);
        std::uint64_t want = (std::uint64_t{1} << l.matter_qubit(s, Flavor::Up)) |
                             (std::uint64_t{1} << l.matter_qubit(s, Flavor::Down));
        for (std::size_t k : l.incident_links(s)) {
            want |= std::uint64_t{1} << l.link_qubit(k);
        }
        EXPECT_EQ(v.z_mask(), want);
    }
    EXPECT_EQ(vertex_stabilizer(l, Site{0, 0}).to_string(), "ZZIIIIIIZIZI");
}

TEST(Encoder, EvenPlaquetteTableRow) {
    DressedLayout d({2, 2});
    PauliString want = dressed_string(d, {{Site{0, 0}, "IIIIXY"},
                                          {Site{0, 1}, "IIXZZY"},
                                          {Site{1, 0}, "IIIXYI"},
                                          {Site{1, 1}, "IIXYII"}});
    EXPECT_EQ(plaquette_stabilizer_dressed(d, Plaquette{Site{0, 0}}), want);
}

TEST(Encoder, MergedPlaquetteIsInvolution) {
    QubitLayout l({3, 2}, false);
    for (const auto& p : l.geometry().plaquettes) {
        PauliString s = plaquette_stabilizer(l, p);
        EXPECT_EQ(s.x_mask() & l.matter_mask(), 0u);
        EXPECT_EQ(s * s, PauliString(l.num_qubits()));
        EXPECT_LE(s.weight(), 6);
    }
}

TEST(Encoder, StabilizersCommuteWithHamiltonian) {
    for (LatticeSpec spec : {LatticeSpec{2, 2}, LatticeSpec{3, 2}, LatticeSpec{2, 3}}) {
        QubitLayout l(spec, true);
        ModelParams p;
        p.n_target = static_cast<int>(spec.num_sites());
        auto stabs = build_stabilizers(l).all();
        for (std::size_t i = 0; i < stabs.size(); ++i) {
            for (std::size_t j = 0; j < stabs.size(); ++j) {
                EXPECT_TRUE(commutes(stabs[i], stabs[j]));
            }
        }
        for (const auto& t : build_hamiltonian(l, p, true).terms) {
            for (const auto& s : stabs) {
                EXPECT_TRUE(commutes(t.op, s)) << t.op.to_string() << " vs " << s.to_string();
            }
        }
    }
}

TEST(Encoder, MergedHoppingSnapshot) {
    QubitLayout l({2, 2}, false);
    PauliSum h = hopping_term(l, l.geometry().links[0], Flavor::Up, 2.0);
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h.terms()[0].op.to_string(), "XZIYIIIIXIII");
    EXPECT_EQ(h.terms()[0].coeff, cplx(-1.0));
    EXPECT_EQ(h.terms()[0].op.weight(), 4);
}

TEST(Encoder, HamiltonianLayout) {
    QubitLayout l({2, 2}, false);
    ModelParams p;
    p.n_target = 4;
    EncodedHamiltonian h = build_hamiltonian(l, p, false);
    int onsite = 0;
    int hop = 0;
    for (const auto& t : h.terms) {
        onsite += t.tag.kind == TermKind::Onsite;
        hop += t.tag.kind == TermKind::Hopping;
        EXPECT_TRUE(t.op.is_hermitian());
    }
    EXPECT_EQ(onsite, 4);
    EXPECT_EQ(hop, 16);
    EncodedHamiltonian full = build_hamiltonian(l, p, true);
    EXPECT_GT(full.terms.size(), h.terms.size());
}

TEST(Encoder, NumberPenaltyMatchesSquare) {
    QubitLayout l({2, 1}, false);
    PauliSum pen = number_penalty(l, 1.0, 1);
    Eigen::MatrixXcd d = to_dense(pen);
    for (Eigen::Index b = 0; b < d.rows(); ++b) {
        int n = 0;
        for (std::size_t q = 0; q < 4; ++q) {
            n += (b >> q) & 1;
        }
        EXPECT_NEAR(d(b, b).real(), (n - 1.0) * (n - 1.0), 1e-12);
    }
    EXPECT_THROW(number_penalty(l, 1.0, 5), std::invalid_argument);
}

TEST(Encoder, ExcitationOperators) {
    QubitLayout l({2, 2}, true);
    EXPECT_EQ(excitation_operator(l, ExcitationKind::Spin, Site{1, 1}).weight(), 2);
    PauliString g = excitation_operator(l, ExcitationKind::Charge, Site{0, 0});
    EXPECT_EQ(g.letter(l.matter_qubit(Site{0, 0}, Flavor::Up)), 'X');
    EXPECT_EQ(g.letter(l.matter_qubit(Site{0, 0}, Flavor::Down)), 'Z');
    EXPECT_EQ(g.letter(*l.extra_rishon()), 'Y');
    EXPECT_EQ(g.weight(), 3);
    for (const auto& s : build_stabilizers(l).all()) {
        EXPECT_TRUE(commutes(g, s));
    }
    EXPECT_THROW(excitation_operator(l, ExcitationKind::Charge, Site{1, 0}), std::invalid_argument);
    EXPECT_THROW(excitation_operator(QubitLayout({2, 2}, false), ExcitationKind::Charge, Site{0, 0}),
                 std::invalid_argument);
}

TEST(Encoder, WeightReport) {
    QubitLayout l({4, 2}, true);
    WeightReport w = weight_report(l, ModelParams{});
    EXPECT_EQ(w.hopping_single_species, 6);
    EXPECT_EQ(w.hopping_spinful, 7);
    EXPECT_EQ(w.onsite, 2);
    EXPECT_LE(w.vertex_max, 6);
    EXPECT_LE(w.plaquette, 6);
    EXPECT_EQ(w.parity_weight, 1);
    EXPECT_EQ(w.qubits, 27u);
}
