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

#include "qreuse/postproc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qreuse {
namespace {

void check_two_register_shape(const StateVector& state, const char* stage) {
    if (state.num_registers() != 2 || state.dims()[0] != 2) {
        throw PreconditionError(std::string(stage) + " expects a state shaped [qubit, data]");
    }
}

}  // namespace

KrausPair kraus_pair(const OracleConfig& cfg, const Partition& part, SimMode mode) {
    const double sqrt_lp = std::sqrt(cfg.lambda_plus);
    const double sqrt_lm = std::sqrt(cfg.lambda_minus);

    std::vector<int> labels;
    if (mode == SimMode::kReduced) {
        labels = {0, 1};
    } else {
        labels.assign(part.members0.size() + part.members1.size(), 0);
        for (const std::size_t i : part.members1) {
            labels[i] = 1;
        }
    }
    std::vector<Amplitude> d0(labels.size());
    std::vector<Amplitude> d1(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        d0[i] = Amplitude{labels[i] == 0 ? sqrt_lp : sqrt_lm, 0.0};
        d1[i] = Amplitude{labels[i] == 1 ? sqrt_lp : sqrt_lm, 0.0};
    }
    return KrausPair{DenseOperator::diagonal(std::move(d0)), DenseOperator::diagonal(std::move(d1))};
}

std::pair<double, double> alpha_probabilities(const OracleConfig& cfg, const Partition& part) {
    const double gap = part.xi0 - part.xi1;
    return {(1.0 + gap * cfg.reliability) / 2.0, (1.0 - gap * cfg.reliability) / 2.0};
}

AlphaResult measure_alpha(const StateVector& oracle_output, RandomStream& rng) {
    check_two_register_shape(oracle_output, "answer measurement");
    MeasurementResult mr = measure(oracle_output, 0, rng);
    return AlphaResult{static_cast<int>(mr.outcome), mr.probability,
                       extract_register(mr.post_state, 1)};
}

double optimal_theta(const OracleConfig& cfg) {
    return std::acos(std::sqrt(cfg.lambda_minus / cfg.lambda_plus));
}

DenseOperator controlled_ancilla_flip() {
    // Basis [ancilla, class]: |b, 0> -> |b, 0>, |b, 1> -> |b^1, 1>.
    std::vector<Amplitude> e(16, Amplitude{0.0, 0.0});
    e[0 * 4 + 0] = Amplitude{1.0, 0.0};
    e[3 * 4 + 1] = Amplitude{1.0, 0.0};
    e[2 * 4 + 2] = Amplitude{1.0, 0.0};
    e[1 * 4 + 3] = Amplitude{1.0, 0.0};
    return DenseOperator(4, 4, std::move(e));
}

DenseOperator build_recovery(int m_alpha, double theta) {
    if (m_alpha != 0 && m_alpha != 1) {
        throw std::domain_error("answer outcome must be 0 or 1");
    }
    if (!(theta >= 0.0 && theta <= std::acos(-1.0) / 2.0 + 1e-12)) {
        throw std::domain_error("recovery angle must lie in [0, pi/2]");
    }
    const bool flipped = (m_alpha == 0);
    const DenseOperator ancilla_part =
        flipped ? DenseOperator::pauli_x() : DenseOperator::identity(2);
    const Amplitude phase_sign{0.0, flipped ? -1.0 : 1.0};

    const DenseOperator mixer =
        Amplitude{std::cos(theta), 0.0} * tensor(ancilla_part, DenseOperator::identity(2)) +
        (phase_sign * Amplitude{std::sin(theta), 0.0}) * controlled_ancilla_flip();
    return mixer * tensor(DenseOperator::identity(2), DenseOperator::phase(theta));
}

DenseOperator embed_recovery(const DenseOperator& reduced_op, const ConceptDataset& ds,
                             const Partition& part) {
    if (reduced_op.rows() != 4 || reduced_op.cols() != 4) {
        throw DimensionError("embedding expects a 4-dim [ancilla, class] operator");
    }
    const std::size_t n = ds.size();
    std::vector<std::vector<double>> x(2, std::vector<double>(n, 0.0));
    for (int tau = 0; tau < 2; ++tau) {
        const auto& members = (tau == 0) ? part.members0 : part.members1;
        if (members.empty()) {
            continue;
        }
        const StateVector cls = class_state(ds, part, tau, SimMode::kFull);
        for (std::size_t i = 0; i < n; ++i) {
            x[tau][i] = cls[i].real();
        }
    }

    const std::size_t dim = 2 * n;
    std::vector<Amplitude> e(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t bo = 0; bo < 2; ++bo) {
        for (std::size_t io = 0; io < n; ++io) {
            for (std::size_t bi = 0; bi < 2; ++bi) {
                for (std::size_t ii = 0; ii < n; ++ii) {
                    Amplitude v{0.0, 0.0};
                    for (int to = 0; to < 2; ++to) {
                        if (x[to][io] == 0.0) {
                            continue;
                        }
                        for (int ti = 0; ti < 2; ++ti) {
                            v += x[to][io] * reduced_op(bo * 2 + to, bi * 2 + ti) * x[ti][ii];
                        }
                    }
                    if (bo == bi) {
                        const double in_span = x[0][io] * x[0][ii] + x[1][io] * x[1][ii];
                        v += Amplitude{(io == ii ? 1.0 : 0.0) - in_span, 0.0};
                    }
                    e[(bo * n + io) * dim + (bi * n + ii)] = v;
                }
            }
        }
    }
    return DenseOperator(dim, dim, std::move(e));
}

RecoverySetup make_recovery_setup(const OracleConfig& cfg, const ConceptDataset& ds,
                                  const Partition& part, SimMode mode) {
    const double theta = optimal_theta(cfg);
    DenseOperator u0 = build_recovery(0, theta);
    DenseOperator u1 = build_recovery(1, theta);
    if (mode == SimMode::kFull) {
        u0 = embed_recovery(u0, ds, part);
        u1 = embed_recovery(u1, ds, part);
    }
    return RecoverySetup{theta, std::move(u0), std::move(u1)};
}

BetaResult measure_beta(const StateVector& recovery_output, int m_alpha, RandomStream& rng) {
    check_two_register_shape(recovery_output, "ancilla measurement");
    if (m_alpha != 0 && m_alpha != 1) {
        throw PreconditionError("answer outcome must be 0 or 1");
    }
    MeasurementResult mr = measure(recovery_output, 0, rng);
    const int m_beta = static_cast<int>(mr.outcome);
    const bool consistent = (m_beta == m_alpha);
    return BetaResult{m_beta, consistent, mr.probability, extract_register(mr.post_state, 1),
                      consistent ? BetaKind::kExtractedAnswer : BetaKind::kRecoveredInput};
}

}  // namespace qreuse
