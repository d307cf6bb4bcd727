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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "defermion/circuit.hpp"
#include "defermion/encoder.hpp"
#include "defermion/lattice.hpp"

namespace defermion::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kProtocolFailure = 3 };

enum class Excitation { None, Spin, Charge };
enum class OutputFormat { Jsonl, Csv };

struct RunConfig {
    LatticeSpec lattice{2, 2};
    /// "auto" adds the extra rishon only for charge injection.
    std::string extra_rishon = "auto";
    ModelParams model;  // n_target < 0 means one particle per site
    AdiabaticSchedule schedule;
    double dt = 0.01;
    double tau_max = 10.0;
    int record_every = 10;
    std::vector<double> dt_list = {0.1, 0.05, 0.02, 0.01};
    double convergence_tau_max = 20.0;
    Excitation excitation = Excitation::None;
    Site site{0, 0};
    std::uint64_t seed = 0;
    bool oracle_check = false;
    bool fuse_blocks = false;
    std::string output;  // empty writes to stdout
    OutputFormat format = OutputFormat::Jsonl;

    RunConfig() { model.n_target = -1; }

    /// Model parameters with n_target resolved.
    ModelParams resolved_model() const;
    bool use_extra_rishon() const;
    QubitLayout layout() const;
    void validate() const;
};

/// Sorted list of every configuration key.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form; throws std::invalid_argument on an
/// unknown key or a malformed value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Applies "key = value" lines; '#' starts a comment.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::string& path);

/// One "key=value" line per key in config_keys() order.
std::string resolved_text(const RunConfig& config);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

/// Entry point shared by the executable and tests.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace defermion::cli
