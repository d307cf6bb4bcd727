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

#include "defermion/lattice.hpp"

#include <stdexcept>

namespace defermion {

void LatticeSpec::validate() const {
    if (lx < 1 || ly < 1) {
        throw std::invalid_argument("invalid lattice " + std::to_string(lx) + "x" + std::to_string(ly) +
                                    ": both extents must be >= 1");
    }
}

std::size_t LatticeSpec::num_links() const {
    return static_cast<std::size_t>((lx - 1) * ly + lx * (ly - 1));
}

std::size_t LatticeSpec::num_plaquettes() const {
    return static_cast<std::size_t>((lx - 1) * (ly - 1));
}

std::string LatticeSpec::to_string() const {
    return std::to_string(lx) + "x" + std::to_string(ly);
}

LatticeGeometry enumerate(const LatticeSpec& spec) {
    spec.validate();
    LatticeGeometry g;
    for (int y = 0; y < spec.ly; ++y) {
        for (int x = 0; x < spec.lx; ++x) {
            g.sites.push_back({x, y});
        }
    }
    for (int y = 0; y < spec.ly; ++y) {
        for (int x = 0; x + 1 < spec.lx; ++x) {
            g.links.push_back({{x, y}, Direction::X});
        }
    }
    for (int y = 0; y + 1 < spec.ly; ++y) {
        for (int x = 0; x < spec.lx; ++x) {
            g.links.push_back({{x, y}, Direction::Y});
        }
    }
    for (int y = 0; y + 1 < spec.ly; ++y) {
        for (int x = 0; x + 1 < spec.lx; ++x) {
            g.plaquettes.push_back({{x, y}});
        }
    }
    return g;
}

std::uint64_t HilbertDims::full() const {
    if (full_log2 >= 64) {
        throw std::overflow_error("Hilbert dimension 2^" + std::to_string(full_log2) + " exceeds 64 bits");
    }
    return std::uint64_t{1} << full_log2;
}

std::uint64_t HilbertDims::physical() const {
    if (physical_log2 >= 64) {
        throw std::overflow_error("Hilbert dimension 2^" + std::to_string(physical_log2) + " exceeds 64 bits");
    }
    return std::uint64_t{1} << physical_log2;
}

HilbertDims hilbert_dims(const LatticeSpec& spec) {
    spec.validate();
    int xy = spec.lx * spec.ly;
    return {4 * xy - spec.lx - spec.ly, 2 * xy - 1};
}

QubitLayout::QubitLayout(const LatticeSpec& spec, bool with_extra_rishon) : spec_(spec), geometry_(enumerate(spec)) {
    std::size_t q = 0;
    matter_.resize(geometry_.sites.size());
    for (std::size_t i = 0; i < geometry_.sites.size(); ++i) {
        int up = geometry_.sites[i].even() ? 0 : 1;
        matter_[i][0] = q + static_cast<std::size_t>(up);
        matter_[i][1] = q + static_cast<std::size_t>(1 - up);
        q += 2;
    }
    q += geometry_.links.size();
    if (with_extra_rishon) {
        extra_rishon_ = q++;
    }
    num_qubits_ = q;
}

bool QubitLayout::contains(Site s) const {
    return s.x >= 0 && s.y >= 0 && s.x < spec_.lx && s.y < spec_.ly;
}

std::size_t QubitLayout::site_index(Site s) const {
    if (!contains(s)) {
        throw std::invalid_argument("site (" + std::to_string(s.x) + "," + std::to_string(s.y) + ") outside lattice " +
                                    spec_.to_string());
    }
    return static_cast<std::size_t>(s.y * spec_.lx + s.x);
}

std::size_t QubitLayout::matter_qubit(Site s, Flavor f) const {
    return matter_qubit(site_index(s), f);
}

std::size_t QubitLayout::link_index(const Link& l) const {
    if (!contains(l.from) || !contains(l.to())) {
        throw std::invalid_argument("link outside lattice " + spec_.to_string());
    }
    if (l.dir == Direction::X) {
        return static_cast<std::size_t>(l.from.y * (spec_.lx - 1) + l.from.x);
    }
    return static_cast<std::size_t>(spec_.ly * (spec_.lx - 1) + l.from.y * spec_.lx + l.from.x);
}

std::optional<std::size_t> QubitLayout::link_at(Site s, Rishon r) const {
    Link l;
    switch (r) {
        case Rishon::W:
            l = {{s.x - 1, s.y}, Direction::X};
            break;
        case Rishon::E:
            l = {s, Direction::X};
            break;
        case Rishon::S:
            l = {{s.x, s.y - 1}, Direction::Y};
            break;
        case Rishon::N:
            l = {s, Direction::Y};
            break;
    }
    if (!contains(l.from) || !contains(l.to())) {
        return std::nullopt;
    }
    return link_index(l);
}

std::vector<std::size_t> QubitLayout::incident_links(Site s) const {
    std::vector<std::size_t> out;
    for (Rishon r : {Rishon::W, Rishon::S, Rishon::E, Rishon::N}) {
        if (auto l = link_at(s, r)) {
            out.push_back(*l);
        }
    }
    return out;
}

std::uint64_t QubitLayout::matter_mask() const {
    std::size_t m = num_matter_qubits();
    return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

QubitLayout build_layout(const LatticeSpec& spec, bool with_extra_rishon) {
    return QubitLayout(spec, with_extra_rishon);
}

std::string to_string(Flavor f) {
    return f == Flavor::Up ? "up" : "down";
}

std::string to_string(Rishon r) {
    switch (r) {
        case Rishon::W:
            return "w";
        case Rishon::S:
            return "s";
        case Rishon::E:
            return "e";
        case Rishon::N:
            return "n";
    }
    return "?";
}

}  // namespace defermion
