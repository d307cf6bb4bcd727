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

#include "defermion/observables.hpp"

#include <stdexcept>

namespace defermion {

namespace {

std::size_t rishon_count(const QubitLayout& layout) {
    return layout.num_qubits() - layout.num_matter_qubits();
}

/// Accumulates matter occupations of basis state b with weight p.
void add_matter(const QubitLayout& layout, std::uint64_t b, double p, LocalObservables& out) {
    for (std::size_t j = 0; j < out.n_up.size(); ++j) {
        bool u = (b >> layout.matter_qubit(j, Flavor::Up)) & 1;
        bool d = (b >> layout.matter_qubit(j, Flavor::Down)) & 1;
        if (u) {
            out.n_up[j] += p;
        }
        if (d) {
            out.n_down[j] += p;
        }
        if (u && d) {
            out.n_double[j] += p;
        }
    }
}

LocalObservables empty(const QubitLayout& layout) {
    std::size_t sites = layout.geometry().sites.size();
    LocalObservables o;
    o.n_up.assign(sites, 0.0);
    o.n_down.assign(sites, 0.0);
    o.n_double.assign(sites, 0.0);
    o.rishon.assign(rishon_count(layout), 0.0);
    return o;
}

}  // namespace

double LocalObservables::spin_squared(std::size_t site) const {
    return 0.75 * (n_up[site] + n_down[site] - 2.0 * n_double[site]);
}

double LocalObservables::charge_variance(std::size_t site) const {
    double n = charge(site);
    return n_up[site] + n_down[site] + 2.0 * n_double[site] - n * n;
}

double LocalObservables::total_charge() const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_up.size(); ++j) {
        s += charge(j);
    }
    return s;
}

double LocalObservables::total_sz() const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_up.size(); ++j) {
        s += sz(j);
    }
    return s;
}

double LocalObservables::double_occupancy() const {
    if (n_double.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (double v : n_double) {
        s += v;
    }
    return s / static_cast<double>(n_double.size());
}

LocalObservables measure_local(const QubitLayout& layout, const Eigen::VectorXcd& state) {
    if (state.size() != static_cast<Eigen::Index>(std::size_t{1} << layout.num_qubits())) {
        throw std::invalid_argument("measure_local: state size does not match layout");
    }
    LocalObservables o = empty(layout);
    std::size_t first_link = layout.num_matter_qubits();
    std::vector<double> z(o.rishon.size(), 0.0);
    double total = state.squaredNorm();
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        double p = std::norm(state[i]);
        if (p == 0.0) {
            continue;
        }
        auto b = static_cast<std::uint64_t>(i);
        add_matter(layout, b, p, o);
        for (std::size_t l = 0; l < z.size(); ++l) {
            z[l] += ((b >> (first_link + l)) & 1) ? -p : p;
        }
    }
    for (std::size_t j = 0; j < o.n_up.size(); ++j) {
        o.n_up[j] /= total;
        o.n_down[j] /= total;
        o.n_double[j] /= total;
    }
    for (std::size_t l = 0; l < z.size(); ++l) {
        o.rishon[l] = 0.5 * (1.0 - z[l] / total);
    }
    return o;
}

LocalObservables measure_local(const QubitLayout& layout, const SectorBasis& basis, const Eigen::VectorXcd& v) {
    if (basis.num_qubits() != layout.num_qubits() || v.size() != static_cast<Eigen::Index>(basis.dim())) {
        throw std::invalid_argument("measure_local: sector vector does not match layout");
    }
    std::uint64_t matter = layout.matter_mask();
    for (const auto& g : basis.group()) {
        if (g.x_mask() & matter) {
            throw std::invalid_argument("measure_local: stabilizer group flips matter qubits");
        }
    }
    LocalObservables o = empty(layout);
    double total = v.squaredNorm();
    const auto& reps = basis.representatives();
    for (std::size_t k = 0; k < reps.size(); ++k) {
        add_matter(layout, reps[k], std::norm(v[static_cast<Eigen::Index>(k)]) / total, o);
    }
    std::size_t first_link = layout.num_matter_qubits();
    for (std::size_t l = 0; l < o.rishon.size(); ++l) {
        PauliString z = PauliString::single(layout.num_qubits(), first_link + l, 'Z');
        o.rishon[l] = 0.5 * (1.0 - basis.expectation(z, v).real() / total);
    }
    return o;
}

}  // namespace defermion
