// Copyright 2026 The qreuse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreuse/dataset.hpp"

namespace qreuse {

enum class Command { kRun, kSweep, kVerifyBounds };

enum class ReportFormat { kCsv, kJson };

// Fully resolved experiment description; defaults match the protocol module.
struct ExperimentSpec {
    Command command = Command::kRun;
    std::vector<double> reliability_grid{0.5};
    std::vector<double> xi0_grid{0.5};
    // verify-bounds only: sweep one pinned (L, xi0) point instead of random points.
    bool fixed_point = false;
    std::string dataset_path;  // empty: synthetic two-class dataset
    int n_bits = 1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    SimMode mode = SimMode::kReduced;
    std::uint32_t max_cycles = 10000;
    std::string output_path;  // empty: stdout
    ReportFormat format = ReportFormat::kCsv;
    bool plot = false;
};

// Accepts "csv" or "json".
ReportFormat parse_report_format(const std::string& text);

// Grid syntax: "start:stop:step" (inclusive, positive step) or a comma-separated
// strictly ascending list; every value must lie in [0, 1].
std::vector<double> parse_grid(const std::string& text, const std::string& flag_name);

// Per-grid-point Monte Carlo seed derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t point_index);

// Returns std::nullopt when help was requested; throws UsageError on bad arguments.
std::optional<ExperimentSpec> parse_args(int argc, const char* const* argv);

// Runs the experiment and emits artifacts; returns the process exit status.
int execute(const ExperimentSpec& spec);

// parse_args + execute with errors mapped to exit statuses.
int run_cli(int argc, const char* const* argv);

}  // namespace qreuse
