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

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qreuse/dataset.hpp"
#include "qreuse/oracle.hpp"
#include "qreuse/postproc.hpp"
#include "qreuse/statevec.hpp"

namespace qreuse {

struct ProtocolConfig {
    double reliability = 0.5;
    ConceptDataset dataset = two_class_dataset(0.5, 1);
    SimMode mode = SimMode::kReduced;
    std::uint32_t max_cycles = 10000;
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 1;
};

/// Precomputed immutable pieces shared by all trials of one configuration.
struct ProtocolSetup {
    OracleConfig oracle;
    ConceptDataset dataset;
    Partition part;
    SimMode mode = SimMode::kReduced;
    std::uint32_t max_cycles = 10000;
    DenseOperator oracle_op;
    RecoverySetup recovery;
    StateVector psi0;  // reference copy; building it does not count as a query
    std::array<std::optional<StateVector>, 2> class_states;
};

ProtocolSetup make_setup(const ProtocolConfig& cfg);

struct CycleOutcome {
    int m_alpha = 0;
    int m_beta = 0;
    bool consistent = false;
    double p_alpha = 0.0;
    double p_beta = 0.0;
};

/// One oracle + answer measurement + recovery + ancilla measurement pass.
/// Fresh |0> answer and ancilla qubits are attached internally; the
/// returned state is the data register after the pass.
std::pair<CycleOutcome, StateVector> run_cycle(const StateVector& data_state,
                                               const ProtocolSetup& setup, RandomStream& rng,
                                               std::uint64_t& oracle_queries);

struct RunRecord {
    std::uint32_t cycles = 0;
    std::uint64_t qram_queries = 0;
    std::uint64_t oracle_queries = 0;
    bool success = false;
    int answer = -1;       // -1 when no answer was certified
    int sampled_index = -1;  // full mode: data index measured after success
    std::vector<std::pair<int, int>> outcome_trace;  // (m_alpha, m_beta) per cycle
};

/// One qRAM initialization, then cycles until a consistent outcome or
/// max_cycles. No automatic re-initialization on failure.
RunRecord run_until_success(const ProtocolSetup& setup, RandomStream& rng,
                            bool keep_trace = true);
RunRecord run_until_success(const ProtocolConfig& cfg, RandomStream& rng);

/// Point estimate with a one-standard-error radius. `reliable` is false
/// when the trial count behind the estimate is too small for a radius.
struct Estimate {
    double value = std::numeric_limits<double>::quiet_NaN();
    double radius = std::numeric_limits<double>::quiet_NaN();
    bool reliable = false;
};

/// Analytic single-cycle quantities evaluated by driving the simulator
/// along every branch (no sampling).
struct AnalyticStats {
    std::array<double, 2> p_alpha{};
    std::array<double, 2> q_consistent{};
    std::array<double, 2> q_inconsistent{};
    std::array<double, 2> recovery_fidelity{-1.0, -1.0};    // -1: branch unreachable
    std::array<double, 2> extraction_fidelity{-1.0, -1.0};  // -1: branch unreachable
    double reusability = 0.0;
    double success_per_cycle = 0.0;
    double expected_cycles = 0.0;
    double expected_reuses = 0.0;
    double bound = 0.0;  // 1 - L
};

AnalyticStats analytic_cycle_stats(const ProtocolSetup& setup);

struct SweepStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::array<std::uint64_t, 2> first_alpha_counts{};
    std::array<std::uint64_t, 2> first_inconsistent_counts{};
    std::uint64_t total_cycles_success = 0;
    std::uint64_t misclassified = 0;  // full mode: sampled index label != answer
    bool single_qram_query = true;    // every successful run used exactly one query
    double qram_queries_per_success = std::numeric_limits<double>::quiet_NaN();
    Estimate p0;
    Estimate reusability;   // first-cycle stratified estimate of R
    Estimate success_rate;  // success within max_cycles
    Estimate mean_cycles;   // over successful runs
    Estimate mean_reuses;   // mean_cycles - 1
    std::array<Estimate, 2> q_consistent;
    std::array<Estimate, 2> q_inconsistent;
    AnalyticStats analytic;
};

/// Runs cfg.trials independent trials on per-trial rng streams and folds
/// integer tallies in trial order, so results are bit-for-bit reproducible
/// for a given (config, master_seed).
SweepStats monte_carlo(const ProtocolConfig& cfg);

/// First-cycle stratified estimate of the reusability R.
Estimate estimate_reusability(const ProtocolConfig& cfg);

}  // namespace qreuse
