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

#include <string>
#include <vector>

#include "qreuse/analysis.hpp"
#include "qreuse/protocol.hpp"

namespace qreuse {

/// One grid point of a sweep (or the single point of a run).
struct ReportRow {
    double reliability = 0.0;
    double xi0 = 0.0;
    SweepStats stats;
};

/// Six-significant-digit representation used in all text artifacts.
std::string format_number(double v);

/// Stable schema: L, xi0, trials, emp_P0, se_P0, emp_R, analytic_R,
/// emp_success_rate, mean_cycles, mean_reuses, qram_queries_per_success.
std::string csv_report(const std::vector<ReportRow>& rows);

/// Superset of the CSV schema plus stratified and analytic quantities.
std::string json_report(const std::vector<ReportRow>& rows);

std::string csv_bound_report(const BoundSweepResult& result);
std::string json_bound_report(const BoundSweepResult& result);

/// Self-contained static chart of R versus L: the analytic line 1 - L and
/// the empirical points with one-standard-error bars.
std::string svg_reusability_plot(const std::vector<ReportRow>& rows);

/// Writes content to path via a temporary file and atomic rename, so no
/// partial artifact survives a failure. Throws IoError.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace qreuse
