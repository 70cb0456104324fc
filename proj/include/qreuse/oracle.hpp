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
#include <utility>

#include "qreuse/dataset.hpp"
#include "qreuse/statevec.hpp"

namespace qreuse {

/// Reliability parameters of the unreliable membership oracle. The oracle
/// answers correctly with amplitude weight lambda_plus = (1 + L) / 2 and
/// incorrectly with lambda_minus = (1 - L) / 2.
struct OracleConfig {
    double reliability = 0.0;
    double lambda_plus = 0.5;
    double lambda_minus = 0.5;
};

/// (lambda_plus, lambda_minus) for a reliability in [0, 1]; throws
/// std::domain_error outside that interval.
std::pair<double, double> lambdas(double reliability);

OracleConfig make_oracle_config(double reliability);

/// Unitary oracle on [answer, data]. Acting on |0>_answer |x_i> it writes
/// sqrt(lambda_plus) on the correct label and sqrt(lambda_minus) on the
/// wrong one; the |1>_answer columns complete the unitary.
DenseOperator build_oracle(const OracleConfig& cfg, const Partition& part, SimMode mode);

/// Applies the oracle to a state shaped [answer, data]. The answer register
/// must hold |0>; one oracle query is counted.
StateVector apply_oracle(const StateVector& state, const DenseOperator& oracle_op,
                         std::uint64_t& oracle_queries);

}  // namespace qreuse
