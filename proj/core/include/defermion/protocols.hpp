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
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "defermion/circuit.hpp"
#include "defermion/emulator.hpp"
#include "defermion/encoder.hpp"
#include "defermion/lattice.hpp"
#include "defermion/observables.hpp"
#include "defermion/sector.hpp"

namespace defermion {

/// Hadamard on the (0,0) up qubit, CNOT fan-out to every other matter qubit,
/// then X on down of even sites and up of odd sites: the symmetric
/// superposition of the two checkerboard Neel states. Links stay in |0>.
Circuit initial_state_circuit(const QubitLayout& layout);
StateVector prepare_initial_state(const QubitLayout& layout, std::uint64_t seed = 0);

/// Correction Paulis supported on `correctable` qubits. Entry i anticommutes
/// with stabilizers[i] and commutes with stabilizers[0..i). Entries whose
/// stabilizer is dependent on earlier ones on those qubits are empty.
/// Throws std::invalid_argument if the stabilizers do not commute.
std::vector<std::optional<PauliString>> stabilizer_corrections(const std::vector<PauliString>& stabilizers,
                                                               std::uint64_t correctable);

struct FixingPlan {
    std::vector<PauliString> stabilizers;  // vertices, then plaquettes
    std::vector<std::optional<PauliString>> corrections;
};

/// Corrections on link qubits and the extra rishon.
FixingPlan fixing_plan(const QubitLayout& layout);

/// Width n + 1 (ancilla last), one classical bit per stabilizer.
Circuit stabilizer_fixing_circuit(const FixingPlan& plan, std::size_t num_qubits);

/// Measures every stabilizer through an ancilla and applies the planned
/// corrections; returns the raw outcomes (1 means -1). Throws ProtocolError
/// when a stabilizer without correction reads -1.
std::vector<std::uint8_t> fix_stabilizers(StateVector& state, const FixingPlan& plan, const RunOptions& opts = {});
std::vector<std::uint8_t> fix_stabilizers(StateVector& state, const QubitLayout& layout, const RunOptions& opts = {});

/// Runs the adiabatic ramp step by step on the emulator.
void adiabatic_ground_state(StateVector& state, const QubitLayout& layout, const ModelParams& params,
                            const AdiabaticSchedule& schedule, const RunOptions& opts = {});

/// Spin: project to |1_u 0_d> and apply X_u X_d. Charge: project u to |1>
/// and apply the charge operator. Throws ProtocolError when the
/// post-selection is impossible.
void inject_excitation(StateVector& state, const QubitLayout& layout, ExcitationKind kind, Site site);

struct TrajectoryRecord {
    double tau = 0.0;
    std::vector<double> sz;
    std::vector<double> charge;
    std::vector<double> rishon;
    double double_occupancy = 0.0;
    double energy = 0.0;
    std::vector<double> stabilizers;
    double norm = 1.0;
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;

    std::vector<double> taus() const;
    std::vector<double> sz(std::size_t site) const;
    std::vector<double> charge(std::size_t site) const;
};

TrajectoryRecord record_state(const QubitLayout& layout, const StateVector& state, const PauliSum& h,
                              const std::vector<PauliString>& stabilizers, double tau);

/// First-order Trotter evolution without penalties. Records at step 0 and
/// every `record_every` steps; the step count is round(total_tau / dt).
Trajectory evolve_and_record(StateVector& state, const QubitLayout& layout, const EncodedHamiltonian& h,
                             double total_tau, double dt, int record_every, const RunOptions& opts = {});

/// Evolves forward to tau_max with step dt, then back with the negated step
/// in the same term order; returns |<n_up n_down>_final - <n_up n_down>_initial|
/// averaged over sites.
double forward_backward_error(const StateVector& initial, const QubitLayout& layout, const EncodedHamiltonian& h,
                              double dt, double tau_max, const RunOptions& opts = {});

struct ConvergenceRow {
    double dt = 0.0;
    double error = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    /// Least-squares slope of log(error) against log(dt); absent for fewer
    /// than two rows or a nonpositive error.
    std::optional<double> slope;
};

std::optional<double> loglog_slope(const std::vector<ConvergenceRow>& rows);

/// Forward-backward errors from the prepared and fixed initial state.
/// Throws std::invalid_argument unless dt_list is positive and strictly
/// descending.
ConvergenceResult trotter_convergence(const QubitLayout& layout, const ModelParams& params,
                                      const std::vector<double>& dt_list, double tau_max,
                                      const RunOptions& opts = {}, std::uint64_t seed = 0);

struct PeakOptions {
    /// Minimum height of an accepted maximum, as a fraction of the largest
    /// smoothed deviation in the series; 0 accepts the first local maximum.
    double relative_height = 0.5;
};

/// Time of the first local maximum of |values - values[0]| after a centered
/// 3-point moving average, among maxima passing the height cut.
std::optional<double> first_peak(const std::vector<double>& taus, const std::vector<double>& values,
                                 const PeakOptions& opts = {});

/// Exact dynamics restricted to the joint +1 stabilizer sector.
class SectorDynamics {
   public:
    SectorDynamics(const QubitLayout& layout, const ModelParams& params, int max_log2_dim = 22);

    const QubitLayout& layout() const { return layout_; }
    const SectorBasis& basis() const { return basis_; }
    std::size_t dim() const { return basis_.dim(); }

    /// Sector image of the prepared and fixed checkerboard superposition.
    Eigen::VectorXcd initial_state() const;
    /// Throws std::invalid_argument when the full-space state leaves the
    /// sector by more than 1e-10.
    Eigen::VectorXcd from_full(const Eigen::VectorXcd& full) const;
    Eigen::VectorXcd to_full(const Eigen::VectorXcd& v) const { return basis_.embed(v); }

    /// exp(-i (H_onsite + beta H_hop) tau) v.
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& v, double tau, double beta = 1.0) const;
    /// Exact propagation through each schedule plateau.
    Eigen::VectorXcd adiabatic(const Eigen::VectorXcd& v, const AdiabaticSchedule& schedule) const;
    Eigen::VectorXcd inject(const Eigen::VectorXcd& v, ExcitationKind kind, Site site) const;

    double energy(const Eigen::VectorXcd& v, double beta = 1.0) const;
    TrajectoryRecord record(const Eigen::VectorXcd& v, double tau) const;
    /// Records at tau = 0, record_dt, ... up to total_tau.
    Trajectory evolve_and_record(Eigen::VectorXcd v, double total_tau, double record_dt) const;

   private:
    QubitLayout layout_;
    SectorBasis basis_;
    std::vector<PauliString> stabilizers_;
    SparseMatrix onsite_;
    SparseMatrix hopping_;
    double onsite_norm_ = 0.0;
    double hopping_norm_ = 0.0;
};

}  // namespace defermion
