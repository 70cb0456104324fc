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

#include "qreuse/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qreuse {
namespace {

// Oracle action on the answer qubit over data of true label tau:
// column a=0 writes the lambda amplitudes, column a=1 completes the unitary.
Amplitude answer_block(int tau, std::size_t a_out, std::size_t a_in, double sqrt_lp,
                       double sqrt_lm) {
    const bool correct = (static_cast<int>(a_out) == tau);
    if (a_in == 0) {
        return Amplitude{correct ? sqrt_lp : sqrt_lm, 0.0};
    }
    return Amplitude{correct ? sqrt_lm : -sqrt_lp, 0.0};
}

}  // namespace

std::pair<double, double> lambdas(double reliability) {
    if (!(reliability >= 0.0 && reliability <= 1.0)) {
        throw std::domain_error("reliability must lie in [0, 1]");
    }
    return {(1.0 + reliability) / 2.0, (1.0 - reliability) / 2.0};
}

OracleConfig make_oracle_config(double reliability) {
    const auto [lp, lm] = lambdas(reliability);
    return OracleConfig{reliability, lp, lm};
}

DenseOperator build_oracle(const OracleConfig& cfg, const Partition& part, SimMode mode) {
    const double sqrt_lp = std::sqrt(cfg.lambda_plus);
    const double sqrt_lm = std::sqrt(cfg.lambda_minus);

    std::vector<int> labels;
    if (mode == SimMode::kReduced) {
        labels = {0, 1};
    } else {
        labels.assign(part.members0.size() + part.members1.size(), 0);
        for (const std::size_t i : part.members1) {
            if (i >= labels.size()) {
                throw DimensionError("partition member index out of range");
            }
            labels[i] = 1;
        }
    }

    const std::size_t n = labels.size();
    const std::size_t dim = 2 * n;
    std::vector<Amplitude> e(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a_out = 0; a_out < 2; ++a_out) {
            for (std::size_t a_in = 0; a_in < 2; ++a_in) {
                e[(a_out * n + i) * dim + (a_in * n + i)] =
                    answer_block(labels[i], a_out, a_in, sqrt_lp, sqrt_lm);
            }
        }
    }
    return DenseOperator(dim, dim, std::move(e));
}

StateVector apply_oracle(const StateVector& state, const DenseOperator& oracle_op,
                         std::uint64_t& oracle_queries) {
    if (state.num_registers() != 2 || state.dims()[0] != 2) {
        throw PreconditionError("oracle expects a state shaped [answer, data]");
    }
    const std::vector<double> marginal = born_probabilities(state, 0);
    if (marginal[1] > norm_tolerance()) {
        throw PreconditionError("answer register must be |0> before the oracle");
    }
    StateVector out = apply(oracle_op, state, {0, 1});
    ++oracle_queries;
    return out;
}

}  // namespace qreuse
