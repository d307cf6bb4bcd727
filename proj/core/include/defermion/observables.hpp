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
#include <vector>

#include <Eigen/Dense>

#include "defermion/lattice.hpp"
#include "defermion/sector.hpp"

namespace defermion {

/// Per-site matter occupations and per-link rishon occupations.
struct LocalObservables {
    std::vector<double> n_up;
    std::vector<double> n_down;
    std::vector<double> n_double;  // <n_up n_down>
    /// (1 - <Z>) / 2 per link qubit; the extra rishon, if any, comes last.
    std::vector<double> rishon;

    double sz(std::size_t site) const { return 0.5 * (n_up[site] - n_down[site]); }
    double charge(std::size_t site) const { return n_up[site] + n_down[site]; }
    double spin_squared(std::size_t site) const;
    double charge_variance(std::size_t site) const;
    double total_charge() const;
    double total_sz() const;
    /// Site average of <n_up n_down>.
    double double_occupancy() const;
};

/// From full-space amplitudes over layout.num_qubits() qubits. Normalizes by
/// the squared norm of `state`.
LocalObservables measure_local(const QubitLayout& layout, const Eigen::VectorXcd& state);

/// From sector coordinates; the basis must act on the layout's qubits.
LocalObservables measure_local(const QubitLayout& layout, const SectorBasis& basis, const Eigen::VectorXcd& v);

}  // namespace defermion
