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

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace defermion {

namespace {

EncodedTerm real_term(const PauliTerm& t, TermTag tag) {
    if (std::abs(t.coeff.imag()) > 1e-12) {
        throw std::logic_error("non-Hermitian Hamiltonian term " + t.op.to_string());
    }
    return {t.coeff.real(), t.op, tag};
}

Rishon from_rishon(Direction d) {
    return d == Direction::X ? Rishon::E : Rishon::N;
}

Rishon to_rishon(Direction d) {
    return d == Direction::X ? Rishon::W : Rishon::S;
}

}  // namespace

void ModelParams::validate() const {
    for (double v : {t, U, alpha_p, alpha_b, mu_tilde}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("model parameters must be finite");
        }
    }
    if (alpha_p < 0 || alpha_b < 0 || mu_tilde < 0) {
        throw std::invalid_argument("penalty strengths must be nonnegative");
    }
}

DressedRole rishon_role(Rishon r) {
    switch (r) {
        case Rishon::W:
            return DressedRole::W;
        case Rishon::S:
            return DressedRole::S;
        case Rishon::E:
            return DressedRole::E;
        case Rishon::N:
            return DressedRole::N;
    }
    return DressedRole::W;
}

DressedLayout::DressedLayout(const LatticeSpec& spec) : spec_(spec) {
    spec_.validate();
    if (num_qubits() > kMaxPauliQubits) {
        throw std::invalid_argument("dressed layout of " + spec_.to_string() + " needs more than 64 qubits");
    }
}

std::size_t DressedLayout::position(Site s, DressedRole role) {
    static constexpr std::array<std::size_t, 6> kEven = {0, 1, 2, 3, 4, 5};
    static constexpr std::array<std::size_t, 6> kOdd = {1, 0, 3, 2, 5, 4};
    auto r = static_cast<std::size_t>(role);
    return s.even() ? kEven[r] : kOdd[r];
}

std::size_t DressedLayout::qubit(Site s, DressedRole role) const {
    if (s.x < 0 || s.y < 0 || s.x >= spec_.lx || s.y >= spec_.ly) {
        throw std::invalid_argument("site outside lattice " + spec_.to_string());
    }
    return 6 * static_cast<std::size_t>(s.y * spec_.lx + s.x) + position(s, role);
}

MergePlan DressedLayout::merge_plan(const QubitLayout& merged) const {
    if (!(merged.spec() == spec_)) {
        throw std::invalid_argument("merge plan: lattice mismatch");
    }
    MergePlan plan;
    plan.out_qubits = merged.num_qubits();
    const auto& geo = merged.geometry();
    for (const Site& s : geo.sites) {
        plan.keep.push_back({qubit(s, DressedRole::U), merged.matter_qubit(s, Flavor::Up)});
        plan.keep.push_back({qubit(s, DressedRole::D), merged.matter_qubit(s, Flavor::Down)});
    }
    for (std::size_t l = 0; l < geo.links.size(); ++l) {
        const Link& link = geo.links[l];
        plan.pairs.push_back({qubit(link.from, rishon_role(from_rishon(link.dir))),
                              qubit(link.to(), rishon_role(to_rishon(link.dir))), merged.link_qubit(l)});
    }
    for (const Site& s : geo.sites) {
        for (Rishon r : {Rishon::W, Rishon::S, Rishon::E, Rishon::N}) {
            if (merged.link_at(s, r)) {
                continue;
            }
            std::size_t q = qubit(s, rishon_role(r));
            if (merged.has_extra_rishon() && s == Site{0, 0} && r == Rishon::S) {
                plan.keep.push_back({q, *merged.extra_rishon()});
            } else {
                plan.vacuum.push_back(q);
            }
        }
    }
    return plan;
}

PauliString majorana_pauli(const DressedLayout& layout, const Majorana& m) {
    DressedRole role;
    if (m.kind == Majorana::Kind::Gamma) {
        role = rishon_role(m.rishon);
    } else {
        role = m.flavor == Flavor::Up ? DressedRole::U : DressedRole::D;
    }
    std::size_t q = layout.qubit(m.site, role);
    std::size_t base = q - DressedLayout::position(m.site, role);
    PauliString p(layout.num_qubits());
    p.set_letter(q, m.kind == Majorana::Kind::Dy ? 'Y' : 'X');
    for (std::size_t k = q + 1; k < base + 6; ++k) {
        p.set_letter(k, 'Z');
    }
    return p;
}

PauliString majorana_product(const DressedLayout& layout, std::span<const Majorana> ms) {
    auto site_of = [&](const Majorana& m) { return layout.qubit(m.site, DressedRole::U) / 6; };
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            if (site_of(ms[i]) > site_of(ms[j])) {
                ++inversions;
            }
        }
    }
    std::vector<std::size_t> order(ms.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return site_of(ms[a]) < site_of(ms[b]); });
    PauliString out(layout.num_qubits());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t site = site_of(ms[order[i]]);
        std::size_t j = i;
        PauliString group(layout.num_qubits());
        while (j < order.size() && site_of(ms[order[j]]) == site) {
            group = group * majorana_pauli(layout, ms[order[j]]);
            ++j;
        }
        if ((j - i) % 2 != 0) {
            throw std::invalid_argument("Majorana product has odd parity on a site");
        }
        out = out * group;
        i = j;
    }
    return out.with_phase(out.phase_exponent() + 2 * static_cast<int>(inversions & 1));
}

PauliSum hopping_term_dressed(const DressedLayout& layout, const Link& link, Flavor f, double t) {
    PauliSum out(layout.num_qubits());
    if (t == 0.0) {
        return out;
    }
    Site a = link.from;
    Site b = link.to();
    Majorana ga = Majorana::gamma(a, from_rishon(link.dir));
    Majorana gb = Majorana::gamma(b, to_rishon(link.dir));
    std::array<Majorana, 4> first = {Majorana::dx(a, f), ga, gb, Majorana::dy(b, f)};
    std::array<Majorana, 4> second = {Majorana::dy(a, f), ga, gb, Majorana::dx(b, f)};
    out.add(t / 2, majorana_product(layout, first));
    out.add(-t / 2, majorana_product(layout, second));
    return out;
}

PauliSum hopping_term(const QubitLayout& layout, const Link& link, Flavor f, double t) {
    DressedLayout dressed(layout.spec());
    MergePlan plan = dressed.merge_plan(layout);
    PauliSum out(layout.num_qubits());
    PauliSum part = hopping_term_dressed(dressed, link, f, t);
    for (const auto& term : part.terms()) {
        out.add(term.coeff, link_merge(term.op, plan));
    }
    return out;
}

PauliSum onsite_term(const QubitLayout& layout, Site s, double U) {
    PauliSum out(layout.num_qubits());
    if (U == 0.0) {
        return out;
    }
    PauliString p(layout.num_qubits());
    p.set_letter(layout.matter_qubit(s, Flavor::Up), 'Z');
    p.set_letter(layout.matter_qubit(s, Flavor::Down), 'Z');
    out.add(U / 4, p);
    return out;
}

PauliString vertex_stabilizer(const QubitLayout& layout, Site s) {
    DressedLayout dressed(layout.spec());
    PauliString parity(dressed.num_qubits());
    for (DressedRole r : {DressedRole::U, DressedRole::D, DressedRole::W, DressedRole::S, DressedRole::E,
                          DressedRole::N}) {
        parity.set_letter(dressed.qubit(s, r), 'Z');
    }
    return link_merge(parity, dressed.merge_plan(layout));
}

PauliString plaquette_stabilizer_dressed(const DressedLayout& layout, const Plaquette& p) {
    Site ll = p.lower_left;
    Site lr{ll.x + 1, ll.y};
    Site ul{ll.x, ll.y + 1};
    Site ur{ll.x + 1, ll.y + 1};
    // Bottom, left, top, right links, each as i gamma_from gamma_to.
    std::array<Majorana, 8> ms = {
        Majorana::gamma(ll, Rishon::E), Majorana::gamma(lr, Rishon::W), Majorana::gamma(ll, Rishon::N),
        Majorana::gamma(ul, Rishon::S), Majorana::gamma(ul, Rishon::E), Majorana::gamma(ur, Rishon::W),
        Majorana::gamma(lr, Rishon::N), Majorana::gamma(ur, Rishon::S),
    };
    // The four factors of i multiply to 1.
    return majorana_product(layout, ms);
}

PauliString plaquette_stabilizer(const QubitLayout& layout, const Plaquette& p) {
    DressedLayout dressed(layout.spec());
    PauliString s = link_merge(plaquette_stabilizer_dressed(dressed, p), dressed.merge_plan(layout));
    if (!s.is_hermitian() || !((s * s) == PauliString(s.num_qubits()))) {
        throw std::logic_error("plaquette stabilizer is not an involution: " + s.to_string());
    }
    return s;
}

PauliSum plaquette_penalty(const QubitLayout& layout, const Plaquette& p, double alpha_p) {
    PauliSum out(layout.num_qubits());
    if (alpha_p == 0.0) {
        return out;
    }
    out.add(-alpha_p, plaquette_stabilizer(layout, p));
    out.add(alpha_p, PauliString(layout.num_qubits()));
    return out;
}

PauliSum number_penalty(const QubitLayout& layout, double mu_tilde, int n_target) {
    std::size_t m = layout.num_matter_qubits();
    if (n_target < 0 || static_cast<std::size_t>(n_target) > m) {
        throw std::invalid_argument("particle number " + std::to_string(n_target) + " outside [0, " +
                                    std::to_string(m) + "]");
    }
    std::size_t n = layout.num_qubits();
    PauliSum out(n);
    if (mu_tilde == 0.0) {
        return out;
    }
    double a = static_cast<double>(m) / 2.0 - n_target;
    out.add(mu_tilde * (a * a + static_cast<double>(m) / 4.0), PauliString(n));
    for (std::size_t i = 0; i < m; ++i) {
        out.add(-mu_tilde * a, PauliString::single(n, i, 'Z'));
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            PauliString p = PauliString::single(n, i, 'Z');
            p.set_letter(j, 'Z');
            out.add(mu_tilde / 2, p);
        }
    }
    out.canonicalize();
    return out;
}

std::vector<PauliString> StabilizerSet::all() const {
    std::vector<PauliString> out = vertex;
    out.insert(out.end(), plaquette.begin(), plaquette.end());
    return out;
}

StabilizerSet build_stabilizers(const QubitLayout& layout) {
    StabilizerSet s;
    for (const Site& site : layout.geometry().sites) {
        s.vertex.push_back(vertex_stabilizer(layout, site));
    }
    for (const Plaquette& p : layout.geometry().plaquettes) {
        s.plaquette.push_back(plaquette_stabilizer(layout, p));
    }
    return s;
}

PauliSum EncodedHamiltonian::to_sum() const {
    PauliSum out(num_qubits);
    for (const auto& t : terms) {
        out.add(t.coeff, t.op);
    }
    out.canonicalize();
    return out;
}

double EncodedHamiltonian::constant() const {
    double c = 0.0;
    for (const auto& t : terms) {
        if (t.op.is_identity_letters()) {
            c += t.coeff;
        }
    }
    return c;
}

EncodedHamiltonian build_hamiltonian(const QubitLayout& layout, const ModelParams& params, bool include_penalties) {
    params.validate();
    EncodedHamiltonian h;
    h.num_qubits = layout.num_qubits();
    const auto& geo = layout.geometry();
    for (std::size_t i = 0; i < geo.sites.size(); ++i) {
        PauliSum part = onsite_term(layout, geo.sites[i], params.U);
        for (const auto& t : part.terms()) {
            h.terms.push_back(real_term(t, {TermKind::Onsite, i, Flavor::Up}));
        }
    }
    if (params.t != 0.0) {
        DressedLayout dressed(layout.spec());
        MergePlan plan = dressed.merge_plan(layout);
        for (std::size_t l = 0; l < geo.links.size(); ++l) {
            for (Flavor f : {Flavor::Up, Flavor::Down}) {
                PauliSum part = hopping_term_dressed(dressed, geo.links[l], f, params.t);
                for (const auto& t : part.terms()) {
                    PauliSum merged(layout.num_qubits());
                    merged.add(t.coeff, link_merge(t.op, plan));
                    h.terms.push_back(real_term(merged.terms()[0], {TermKind::Hopping, l, f}));
                }
            }
        }
    }
    if (include_penalties) {
        for (std::size_t p = 0; p < geo.plaquettes.size(); ++p) {
            PauliSum part = plaquette_penalty(layout, geo.plaquettes[p], params.alpha_p);
            for (const auto& t : part.terms()) {
                h.terms.push_back(real_term(t, {TermKind::PlaquettePenalty, p, Flavor::Up}));
            }
        }
        PauliSum part = number_penalty(layout, params.mu_tilde, params.n_target);
        for (const auto& t : part.terms()) {
            h.terms.push_back(real_term(t, {TermKind::NumberPenalty, 0, Flavor::Up}));
        }
    }
    return h;
}

PauliString excitation_operator(const QubitLayout& layout, ExcitationKind kind, Site s) {
    std::size_t n = layout.num_qubits();
    if (kind == ExcitationKind::Spin) {
        PauliString p(n);
        p.set_letter(layout.matter_qubit(s, Flavor::Up), 'X');
        p.set_letter(layout.matter_qubit(s, Flavor::Down), 'X');
        return p;
    }
    if (!(s == Site{0, 0})) {
        throw std::invalid_argument("charge injection restricted to the (0,0) corner");
    }
    if (!layout.has_extra_rishon()) {
        throw std::invalid_argument("charge excitation requires the extra boundary rishon");
    }
    DressedLayout dressed(layout.spec());
    PauliString g(dressed.num_qubits());
    g.set_letter(dressed.qubit(s, DressedRole::U), 'X');
    g.set_letter(dressed.qubit(s, DressedRole::D), 'Z');
    g.set_letter(dressed.qubit(s, DressedRole::W), 'Z');
    g.set_letter(dressed.qubit(s, DressedRole::S), 'Y');
    return link_merge(g, dressed.merge_plan(layout));
}

std::string to_string(TermKind k) {
    switch (k) {
        case TermKind::Onsite:
            return "onsite";
        case TermKind::Hopping:
            return "hopping";
        case TermKind::PlaquettePenalty:
            return "plaquette_penalty";
        case TermKind::NumberPenalty:
            return "number_penalty";
    }
    return "?";
}

std::string to_string(ExcitationKind k) {
    return k == ExcitationKind::Spin ? "spin" : "charge";
}

WeightReport weight_report(const QubitLayout& layout, const ModelParams& params) {
    params.validate();
    ModelParams unit;
    unit.t = 1.0;
    unit.U = 1.0;
    EncodedHamiltonian h = build_hamiltonian(layout, unit, false);
    std::uint64_t down_mask = 0;
    for (std::size_t i = 0; i < layout.geometry().sites.size(); ++i) {
        down_mask |= std::uint64_t{1} << layout.matter_qubit(i, Flavor::Down);
    }
    WeightReport r;
    for (const auto& t : h.terms) {
        if (t.tag.kind == TermKind::Hopping) {
            r.hopping_spinful = std::max(r.hopping_spinful, t.op.weight());
            if (t.tag.flavor == Flavor::Up) {
                r.hopping_single_species =
                    std::max(r.hopping_single_species, std::popcount(t.op.support() & ~down_mask));
            }
        } else if (t.tag.kind == TermKind::Onsite) {
            r.onsite = std::max(r.onsite, t.op.weight());
        }
    }
    StabilizerSet s = build_stabilizers(layout);
    r.vertex_min = s.vertex.empty() ? 0 : 64;
    for (const auto& v : s.vertex) {
        r.vertex_min = std::min(r.vertex_min, v.weight());
        r.vertex_max = std::max(r.vertex_max, v.weight());
        r.stabilizer_single_species =
            std::max(r.stabilizer_single_species, std::popcount(v.support() & ~down_mask));
    }
    for (const auto& p : s.plaquette) {
        r.plaquette = std::max(r.plaquette, p.weight());
        r.stabilizer_single_species = std::max(r.stabilizer_single_species, std::popcount(p.support() & ~down_mask));
    }
    if (r.vertex_max > 6 || r.plaquette > 6) {
        throw std::logic_error("stabilizer weight exceeds 6");
    }
    if (r.onsite != 2) {
        throw std::logic_error("on-site weight is not 2");
    }
    std::size_t sites = layout.geometry().sites.size();
    r.qubits = layout.num_qubits();
    r.qubit_fermion_ratio = static_cast<double>(r.qubits) / static_cast<double>(2 * sites);
    r.qubit_fermion_ratio_single_species =
        static_cast<double>(sites + layout.geometry().links.size()) / static_cast<double>(sites);
    return r;
}

}  // namespace defermion
