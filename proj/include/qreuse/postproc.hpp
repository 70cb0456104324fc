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

#include <utility>

#include "qreuse/dataset.hpp"
#include "qreuse/oracle.hpp"
#include "qreuse/statevec.hpp"

namespace qreuse {

/// Kraus pieces of the answer measurement acting on the data register:
/// a_m describes the update conditioned on answer outcome m.
struct KrausPair {
    DenseOperator a0;
    DenseOperator a1;
};

/// a0 = diag over classes of (sqrt(lambda_plus), sqrt(lambda_minus)),
/// a1 with the lambdas swapped; N-dim block-diagonal form in full mode.
KrausPair kraus_pair(const OracleConfig& cfg, const Partition& part, SimMode mode);

/// Analytic answer-outcome probabilities
/// (P0, P1) = ((1 + (xi0 - xi1) L) / 2, (1 - (xi0 - xi1) L) / 2).
std::pair<double, double> alpha_probabilities(const OracleConfig& cfg, const Partition& part);

/// Answer measurement on an oracle output shaped [answer, data].
struct AlphaResult {
    int m_alpha = 0;
    double probability = 0.0;
    StateVector phi;
};

AlphaResult measure_alpha(const StateVector& oracle_output, RandomStream& rng);

/// Recovery angle arccos(sqrt(lambda_minus / lambda_plus)); 0 at L=0 and
/// pi/2 at L=1.
double optimal_theta(const OracleConfig& cfg);

/// Flips the ancilla iff the data register is in class 1; 4-dim on
/// [ancilla, class].
DenseOperator controlled_ancilla_flip();

/// Recovery unitary for answer outcome m_alpha at angle theta, 4-dim on
/// [ancilla, class]:
///   (cos(theta) (sx^{m^1} x 1) + i (-1)^{m^1} sin(theta) C) (1 x R(theta)).
DenseOperator build_recovery(int m_alpha, double theta);

/// Embeds a 4-dim [ancilla, class] operator onto [ancilla, data] of an
/// N-item dataset, acting as given on span{|X0>, |X1>} and as identity on
/// the orthogonal complement.
DenseOperator embed_recovery(const DenseOperator& reduced_op, const ConceptDataset& ds,
                             const Partition& part);

struct RecoverySetup {
    double theta = 0.0;
    DenseOperator u0;
    DenseOperator u1;

    const DenseOperator& for_outcome(int m_alpha) const { return m_alpha == 0 ? u0 : u1; }
};

RecoverySetup make_recovery_setup(const OracleConfig& cfg, const ConceptDataset& ds,
                                  const Partition& part, SimMode mode);

enum class BetaKind { kExtractedAnswer, kRecoveredInput };

/// Ancilla measurement on a recovery output shaped [ancilla, data].
/// The outcome is classified by the consistency rule alone: m_beta equal to
/// m_alpha certifies the answer, disagreement certifies recycling.
struct BetaResult {
    int m_beta = 0;
    bool consistent = false;
    double probability = 0.0;
    StateVector post;  // data register after the measurement
    BetaKind kind = BetaKind::kRecoveredInput;
};

BetaResult measure_beta(const StateVector& recovery_output, int m_alpha, RandomStream& rng);

}  // namespace qreuse
