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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace defermion {

/// Rectangular open-boundary lattice with `lx` sites along x and `ly` along y.
struct LatticeSpec {
    int lx = 0;
    int ly = 0;

    /// Throws std::invalid_argument("invalid lattice ...") unless lx, ly >= 1.
    void validate() const;
    std::size_t num_sites() const { return static_cast<std::size_t>(lx) * static_cast<std::size_t>(ly); }
    std::size_t num_links() const;
    std::size_t num_plaquettes() const;
    std::string to_string() const;  // "2x2"

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

/// 0-based coordinates, (0,0) in the lower-left corner.
struct Site {
    int x = 0;
    int y = 0;

    bool even() const { return ((x + y) & 1) == 0; }
    friend bool operator==(const Site&, const Site&) = default;
};

enum class Direction : std::uint8_t { X, Y };

/// Link from `from` along a positive unit vector.
struct Link {
    Site from;
    Direction dir = Direction::X;

    Site to() const { return dir == Direction::X ? Site{from.x + 1, from.y} : Site{from.x, from.y + 1}; }
    friend bool operator==(const Link&, const Link&) = default;
};

struct Plaquette {
    Site lower_left;

    bool even() const { return lower_left.even(); }
    friend bool operator==(const Plaquette&, const Plaquette&) = default;
};

enum class Flavor : std::uint8_t { Up = 0, Down = 1 };

/// The four rishon slots of a dressed site, named by the link they face.
enum class Rishon : std::uint8_t { W, S, E, N };

struct LatticeGeometry {
    std::vector<Site> sites;           // row-major (x fastest)
    std::vector<Link> links;           // x-links row-major, then y-links row-major
    std::vector<Plaquette> plaquettes;  // by lower-left corner, row-major
};

LatticeGeometry enumerate(const LatticeSpec& spec);

/// Log2 of the full and gauge-invariant Hilbert-space dimensions of the
/// merged encoding (no extra rishon).
struct HilbertDims {
    int full_log2 = 0;
    int physical_log2 = 0;

    /// Throws std::overflow_error when the dimension does not fit in 64 bits.
    std::uint64_t full() const;
    std::uint64_t physical() const;
};

HilbertDims hilbert_dims(const LatticeSpec& spec);

/// Assignment of lattice roles to global qubit indices after link merging.
///
/// Global order: matter qubits site by site (row-major), two per site in the
/// dressed-site order ({u,d} on even sites, {d,u} on odd sites); then one qubit
/// per link in canonical link order; then the optional extra boundary rishon,
/// which belongs to site (0,0) as its south rishon.
class QubitLayout {
   public:
    QubitLayout() = default;
    QubitLayout(const LatticeSpec& spec, bool with_extra_rishon);

    const LatticeSpec& spec() const { return spec_; }
    const LatticeGeometry& geometry() const { return geometry_; }
    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_matter_qubits() const { return 2 * geometry_.sites.size(); }
    bool has_extra_rishon() const { return extra_rishon_.has_value(); }
    std::optional<std::size_t> extra_rishon() const { return extra_rishon_; }

    std::size_t site_index(Site s) const;
    bool contains(Site s) const;
    std::size_t matter_qubit(Site s, Flavor f) const;
    std::size_t matter_qubit(std::size_t site_index, Flavor f) const { return matter_[site_index][static_cast<int>(f)]; }
    std::size_t link_index(const Link& l) const;
    std::size_t link_qubit(std::size_t link_index) const { return 2 * geometry_.sites.size() + link_index; }

    /// Link index attached to `s` through rishon slot `r`, if that link exists.
    std::optional<std::size_t> link_at(Site s, Rishon r) const;
    /// Link indices adjacent to a site, in W, S, E, N order.
    std::vector<std::size_t> incident_links(Site s) const;

    /// Bit mask of all matter qubits (u and d of every site).
    std::uint64_t matter_mask() const;

    friend bool operator==(const QubitLayout& a, const QubitLayout& b) {
        return a.spec_ == b.spec_ && a.matter_ == b.matter_ && a.extra_rishon_ == b.extra_rishon_ &&
               a.num_qubits_ == b.num_qubits_;
    }

   private:
    LatticeSpec spec_;
    LatticeGeometry geometry_;
    std::vector<std::array<std::size_t, 2>> matter_;
    std::optional<std::size_t> extra_rishon_;
    std::size_t num_qubits_ = 0;
};

QubitLayout build_layout(const LatticeSpec& spec, bool with_extra_rishon);

std::string to_string(Flavor f);
std::string to_string(Rishon r);

}  // namespace defermion
