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

#include "qreuse/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qreuse {
namespace {

constexpr double kZeroProbability = 1e-15;

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n) {
    Estimate est;
    if (n == 0) {
        return est;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    est.value = p;
    est.radius = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    est.reliable = n >= 2;
    return est;
}

const StateVector& zero_qubit() {
    static const StateVector zero = StateVector::basis({2}, 0);
    return zero;
}

}  // namespace

ProtocolSetup make_setup(const ProtocolConfig& cfg) {
    if (cfg.trials == 0) {
        throw PreconditionError("trials must be at least 1");
    }
    if (cfg.max_cycles == 0) {
        throw PreconditionError("max_cycles must be at least 1");
    }
    const OracleConfig oracle = make_oracle_config(cfg.reliability);
    Partition part = partition(cfg.dataset);
    DenseOperator oracle_op = build_oracle(oracle, part, cfg.mode);
    RecoverySetup recovery = make_recovery_setup(oracle, cfg.dataset, part, cfg.mode);
    StateVector psi0 = dataset_superposition(cfg.dataset, cfg.mode);

    std::array<std::optional<StateVector>, 2> class_states;
    for (int tau = 0; tau < 2; ++tau) {
        const auto& members = (tau == 0) ? part.members0 : part.members1;
        if (!members.empty()) {
            class_states[tau] = class_state(cfg.dataset, part, tau, cfg.mode);
        }
    }
    return ProtocolSetup{oracle,
                         cfg.dataset,
                         std::move(part),
                         cfg.mode,
                         cfg.max_cycles,
                         std::move(oracle_op),
                         std::move(recovery),
                         std::move(psi0),
                         std::move(class_states)};
}

std::pair<CycleOutcome, StateVector> run_cycle(const StateVector& data_state,
                                               const ProtocolSetup& setup, RandomStream& rng,
                                               std::uint64_t& oracle_queries) {
    StateVector joint = tensor(zero_qubit(), data_state);
    joint = apply_oracle(joint, setup.oracle_op, oracle_queries);
    AlphaResult alpha = measure_alpha(joint, rng);

    StateVector staged = tensor(zero_qubit(), alpha.phi);
    staged = apply(setup.recovery.for_outcome(alpha.m_alpha), staged, {0, 1});
    BetaResult beta = measure_beta(staged, alpha.m_alpha, rng);

    CycleOutcome outcome{alpha.m_alpha, beta.m_beta, beta.consistent, alpha.probability,
                         beta.probability};
    return {outcome, std::move(beta.post)};
}

RunRecord run_until_success(const ProtocolSetup& setup, RandomStream& rng, bool keep_trace) {
    RunRecord rec;
    QramCounter qram;
    StateVector state = qram_init(setup.dataset, qram, setup.mode);
    for (std::uint32_t cycle = 1; cycle <= setup.max_cycles; ++cycle) {
        auto [outcome, post] = run_cycle(state, setup, rng, rec.oracle_queries);
        rec.cycles = cycle;
        if (keep_trace) {
            rec.outcome_trace.emplace_back(outcome.m_alpha, outcome.m_beta);
        }
        if (outcome.consistent) {
            rec.success = true;
            rec.answer = outcome.m_alpha;
            if (setup.mode == SimMode::kFull) {
                rec.sampled_index = static_cast<int>(measure(post, 0, rng).outcome);
            }
            break;
        }
        state = std::move(post);
    }
    rec.qram_queries = qram.queries;
    return rec;
}

RunRecord run_until_success(const ProtocolConfig& cfg, RandomStream& rng) {
    return run_until_success(make_setup(cfg), rng, true);
}

AnalyticStats analytic_cycle_stats(const ProtocolSetup& setup) {
    AnalyticStats st;
    st.bound = 1.0 - setup.oracle.reliability;

    StateVector joint = tensor(zero_qubit(), setup.psi0);
    joint = apply(setup.oracle_op, joint, {0, 1});
    const std::vector<double> p = born_probabilities(joint, 0);

    for (int m = 0; m < 2; ++m) {
        st.p_alpha[m] = p[m];
        if (p[m] <= kZeroProbability) {
            continue;
        }
        StateVector phi = extract_register(project(joint, 0, m).second, 1);
        StateVector staged = tensor(zero_qubit(), phi);
        staged = apply(setup.recovery.for_outcome(m), staged, {0, 1});
        const std::vector<double> q = born_probabilities(staged, 0);
        st.q_consistent[m] = q[m];
        st.q_inconsistent[m] = q[1 - m];

        if (q[1 - m] > kZeroProbability) {
            const StateVector recovered =
                extract_register(project(staged, 0, 1 - m).second, 1);
            st.recovery_fidelity[m] = fidelity(recovered, setup.psi0);
        }
        if (q[m] > kZeroProbability && setup.class_states[m]) {
            const StateVector extracted = extract_register(project(staged, 0, m).second, 1);
            st.extraction_fidelity[m] = fidelity(extracted, *setup.class_states[m]);
        }
    }
    st.reusability = st.p_alpha[0] * st.q_inconsistent[0] + st.p_alpha[1] * st.q_inconsistent[1];
    st.success_per_cycle = st.p_alpha[0] * st.q_consistent[0] + st.p_alpha[1] * st.q_consistent[1];
    if (st.success_per_cycle > 0.0) {
        st.expected_cycles = 1.0 / st.success_per_cycle;
        st.expected_reuses = st.expected_cycles - 1.0;
    } else {
        st.expected_cycles = std::numeric_limits<double>::infinity();
        st.expected_reuses = std::numeric_limits<double>::infinity();
    }
    return st;
}

SweepStats monte_carlo(const ProtocolConfig& cfg) {
    const ProtocolSetup setup = make_setup(cfg);

    SweepStats stats;
    stats.trials = cfg.trials;

    std::uint64_t successes = 0;
    std::uint64_t total_cycles = 0;
    double total_cycles_sq = 0.0;
    std::uint64_t total_qram = 0;
    std::uint64_t misclassified = 0;
    bool single_qram = true;
    std::array<std::uint64_t, 2> first_alpha{};
    std::array<std::uint64_t, 2> first_incons{};

    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        RandomStream rng(cfg.master_seed, t);
        std::uint64_t oracle_queries = 0;
        QramCounter qram;
        StateVector state = qram_init(setup.dataset, qram, setup.mode);

        bool success = false;
        int answer = -1;
        std::uint32_t cycles = 0;
        for (std::uint32_t cycle = 1; cycle <= setup.max_cycles; ++cycle) {
            auto [outcome, post] = run_cycle(state, setup, rng, oracle_queries);
            cycles = cycle;
            if (cycle == 1) {
                ++first_alpha[outcome.m_alpha];
                if (!outcome.consistent) {
                    ++first_incons[outcome.m_alpha];
                }
            }
            if (outcome.consistent) {
                success = true;
                answer = outcome.m_alpha;
                if (setup.mode == SimMode::kFull) {
                    const std::size_t idx = measure(post, 0, rng).outcome;
                    if (setup.dataset.labels[idx] != answer) {
                        ++misclassified;
                    }
                }
                break;
            }
            state = std::move(post);
        }

        total_qram += qram.queries;
        if (success) {
            ++successes;
            total_cycles += cycles;
            total_cycles_sq += static_cast<double>(cycles) * static_cast<double>(cycles);
            if (qram.queries != 1) {
                single_qram = false;
            }
        }
    }

    stats.successes = successes;
    stats.first_alpha_counts = first_alpha;
    stats.first_inconsistent_counts = first_incons;
    stats.total_cycles_success = total_cycles;
    stats.misclassified = misclassified;
    stats.single_qram_query = single_qram;
    stats.qram_queries_per_success =
        successes > 0 ? static_cast<double>(total_qram) / static_cast<double>(successes)
                      : std::numeric_limits<double>::quiet_NaN();

    stats.p0 = binomial_estimate(first_alpha[0], cfg.trials);
    stats.reusability = binomial_estimate(first_incons[0] + first_incons[1], cfg.trials);
    stats.success_rate = binomial_estimate(successes, cfg.trials);
    for (int m = 0; m < 2; ++m) {
        const std::uint64_t n = first_alpha[m];
        stats.q_inconsistent[m] = binomial_estimate(first_incons[m], n);
        stats.q_consistent[m] = binomial_estimate(n - first_incons[m], n);
    }

    if (successes > 0) {
        const double n = static_cast<double>(successes);
        const double mean = static_cast<double>(total_cycles) / n;
        stats.mean_cycles.value = mean;
        stats.mean_reuses.value = mean - 1.0;
        if (successes >= 2) {
            const double var = (total_cycles_sq - n * mean * mean) / (n - 1.0);
            const double se = std::sqrt(std::max(var, 0.0) / n);
            stats.mean_cycles.radius = se;
            stats.mean_cycles.reliable = true;
            stats.mean_reuses.radius = se;
            stats.mean_reuses.reliable = true;
        }
    }

    stats.analytic = analytic_cycle_stats(setup);
    return stats;
}

Estimate estimate_reusability(const ProtocolConfig& cfg) {
    const SweepStats stats = monte_carlo(cfg);
    Estimate est = stats.reusability;
    // The stratified estimate sum_m P_m * Q_m telescopes to the first-cycle
    // inconsistent fraction; flag it unreliable if a stratum with analytic
    // weight never appeared.
    for (int m = 0; m < 2; ++m) {
        if (stats.first_alpha_counts[m] == 0 && stats.analytic.p_alpha[m] > kZeroProbability) {
            est.reliable = false;
        }
    }
    return est;
}

}  // namespace qreuse
