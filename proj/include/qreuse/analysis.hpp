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
#include <vector>

#include "qreuse/statevec.hpp"

namespace qreuse {

/// Upper bound on the reusability for a given oracle reliability: 1 - L.
double tradeoff_bound(double reliability);

/// Mean reuse number as the series sum_{n>=0} n R^n = R / (1 - R)^2.
/// Note this is not the mean of the normalized geometric distribution
/// R^n (1 - R), which is R / (1 - R); both are reported by the harness.
double series_mean_reuse(double reusability);

/// Mean number of reuses before success for per-cycle success L:
/// (1 - L) / L (infinite at L = 0).
double geometric_mean_reuses(double reliability);

/// Haar-distributed unitary via Gram-Schmidt orthonormalization of a
/// complex Gaussian matrix (positive-diagonal QR convention).
DenseOperator haar_unitary(std::size_t dim, RandomStream& rng);

/// One (xi0, L) configuration probed by the adversarial sweep.
struct BoundPoint {
    double xi0 = 0.5;
    double reliability = 0.5;
};

/// Conclusive-recovery weight of one candidate recovery unitary on one
/// answer stratum. eta = p * ratio where ratio is the best branch weight
/// whose post state matches the input superposition with fidelity at
/// least 1 - 1e-9 (recovery must be conclusive to count).
struct TradeoffWitness {
    int m_alpha = 0;
    double eta = 0.0;
    double p = 0.0;
    double ratio = 0.0;
};

/// Witnesses of one candidate (u0, u1) acting as the recovery unitary for
/// the respective answer outcome. Strata with vanishing probability carry
/// eta = ratio = 0.
std::array<TradeoffWitness, 2> candidate_witnesses(const BoundPoint& point,
                                                   const DenseOperator& u0,
                                                   const DenseOperator& u1);

/// sum_m eta_m of the candidate; bounded by 1 - L for valid recoveries.
double candidate_reusability(const BoundPoint& point, const DenseOperator& u0,
                             const DenseOperator& u1);

/// Reusability of the optimal recovery construction at this point.
double optimal_reusability(const BoundPoint& point);

/// Draws n_samples Haar-random candidates (each used for both strata) and
/// returns their witnesses, two per sample in m_alpha order.
std::vector<TradeoffWitness> adversarial_bound_sweep(const BoundPoint& point,
                                                     std::size_t n_samples, RandomStream& rng);

struct BoundSweepResult {
    std::size_t points = 0;
    std::size_t samples = 0;           // Haar candidates drawn in total
    std::size_t witnesses = 0;
    std::size_t violations = 0;        // samples with R_candidate > 1 - L + 1e-9
    std::size_t witness_violations = 0;  // witnesses with eta > lambda_minus + 1e-10
    double max_candidate = 0.0;        // largest R_candidate observed
    double max_excess = 0.0;           // largest R_candidate - (1 - L)
    double max_saturation_gap = 0.0;   // largest |R_optimal - (1 - L)|
};

/// Sweeps one fixed point.
BoundSweepResult verify_bound(const BoundPoint& point, std::size_t n_samples,
                              std::uint64_t seed);

/// Sweeps n_points random (xi0, L) points, samples_per_point candidates each.
BoundSweepResult verify_bound_random(std::size_t n_points, std::size_t samples_per_point,
                                     std::uint64_t seed);

}  // namespace qreuse
