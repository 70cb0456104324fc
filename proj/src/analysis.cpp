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

#include "qreuse/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "qreuse/dataset.hpp"
#include "qreuse/oracle.hpp"
#include "qreuse/postproc.hpp"

namespace qreuse {
namespace {

// A recovery branch counts as conclusive only at (numerically) unit fidelity.
constexpr double kConclusiveFidelity = 1.0 - 1e-9;
constexpr double kBoundTolerance = 1e-9;
constexpr double kWitnessTolerance = 1e-10;
constexpr double kZeroProbability = 1e-15;

struct PointContext {
    OracleConfig cfg;
    StateVector psi0;
    std::array<double, 2> p;
    std::array<std::optional<StateVector>, 2> phi;
};

PointContext make_point_context(const BoundPoint& point) {
    if (!(point.xi0 >= 0.0 && point.xi0 <= 1.0)) {
        throw std::domain_error("xi0 must lie in [0, 1]");
    }
    const OracleConfig cfg = make_oracle_config(point.reliability);
    const ConceptDataset ds = two_class_dataset(point.xi0, 1);
    const Partition part = partition(ds);
    const DenseOperator oracle_op = build_oracle(cfg, part, SimMode::kReduced);

    StateVector psi0 = dataset_superposition(ds, SimMode::kReduced);
    StateVector joint = tensor(StateVector::basis({2}, 0), psi0);
    joint = apply(oracle_op, joint, {0, 1});
    const std::vector<double> p = born_probabilities(joint, 0);

    PointContext ctx{cfg, std::move(psi0), {p[0], p[1]}, {}};
    for (int m = 0; m < 2; ++m) {
        if (p[m] > kZeroProbability) {
            ctx.phi[m] = extract_register(project(joint, 0, m).second, 1);
        }
    }
    return ctx;
}

TradeoffWitness stratum_witness(const PointContext& ctx, int m, const DenseOperator& u) {
    TradeoffWitness w;
    w.m_alpha = m;
    w.p = ctx.p[m];
    if (!ctx.phi[m]) {
        return w;
    }
    StateVector staged = tensor(StateVector::basis({2}, 0), *ctx.phi[m]);
    staged = apply(u, staged, {0, 1});
    const std::vector<double> q = born_probabilities(staged, 0);
    double best = 0.0;
    for (std::size_t b = 0; b < 2; ++b) {
        if (q[b] <= kZeroProbability) {
            continue;
        }
        const StateVector branch = extract_register(project(staged, 0, b).second, 1);
        const double f = fidelity(branch, ctx.psi0);
        if (f >= kConclusiveFidelity) {
            best = std::max(best, q[b] * f);
        }
    }
    w.ratio = best;
    w.eta = w.p * best;
    return w;
}

void merge_sample(BoundSweepResult& acc, const PointContext& ctx,
                  const std::array<TradeoffWitness, 2>& ws) {
    const double bound = 1.0 - ctx.cfg.reliability;
    const double candidate = ws[0].eta + ws[1].eta;
    ++acc.samples;
    acc.witnesses += 2;
    acc.max_candidate = std::max(acc.max_candidate, candidate);
    acc.max_excess = std::max(acc.max_excess, candidate - bound);
    if (candidate > bound + kBoundTolerance) {
        ++acc.violations;
    }
    for (const auto& w : ws) {
        if (w.eta > ctx.cfg.lambda_minus + kWitnessTolerance) {
            ++acc.witness_violations;
        }
    }
}

void sweep_point_into(BoundSweepResult& acc, const BoundPoint& point, std::size_t n_samples,
                      RandomStream& rng) {
    const PointContext ctx = make_point_context(point);
    ++acc.points;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const DenseOperator u = haar_unitary(4, rng);
        std::array<TradeoffWitness, 2> ws{stratum_witness(ctx, 0, u), stratum_witness(ctx, 1, u)};
        merge_sample(acc, ctx, ws);
    }
    const double gap = std::abs(optimal_reusability(point) - (1.0 - point.reliability));
    acc.max_saturation_gap = std::max(acc.max_saturation_gap, gap);
}

}  // namespace

double tradeoff_bound(double reliability) {
    if (!(reliability >= 0.0 && reliability <= 1.0)) {
        throw std::domain_error("reliability must lie in [0, 1]");
    }
    return 1.0 - reliability;
}

double series_mean_reuse(double reusability) {
    if (!(reusability >= 0.0 && reusability <= 1.0)) {
        throw std::domain_error("reusability must lie in [0, 1]");
    }
    if (reusability == 1.0) {
        throw std::domain_error("mean reuse number diverges as reusability approaches 1");
    }
    const double remainder = 1.0 - reusability;
    return reusability / (remainder * remainder);
}

double geometric_mean_reuses(double reliability) {
    if (!(reliability >= 0.0 && reliability <= 1.0)) {
        throw std::domain_error("reliability must lie in [0, 1]");
    }
    if (reliability == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return (1.0 - reliability) / reliability;
}

DenseOperator haar_unitary(std::size_t dim, RandomStream& rng) {
    if (dim == 0) {
        throw DimensionError("unitary dimension must be positive");
    }
    std::vector<std::vector<Amplitude>> col(dim, std::vector<Amplitude>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        int attempts = 0;
        for (;;) {
            for (std::size_t i = 0; i < dim; ++i) {
                col[j][i] = Amplitude{rng.next_gaussian() * M_SQRT1_2,
                                      rng.next_gaussian() * M_SQRT1_2};
            }
            for (std::size_t k = 0; k < j; ++k) {
                Amplitude proj{0.0, 0.0};
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(col[k][i]) * col[j][i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    col[j][i] -= proj * col[k][i];
                }
            }
            double n2 = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                n2 += std::norm(col[j][i]);
            }
            if (n2 > 1e-12) {
                const double inv = 1.0 / std::sqrt(n2);
                for (std::size_t i = 0; i < dim; ++i) {
                    col[j][i] *= inv;
                }
                break;
            }
            if (++attempts > 16) {
                throw InvalidStateError("failed to draw an independent Gaussian column");
            }
        }
    }
    std::vector<Amplitude> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            e[r * dim + c] = col[c][r];
        }
    }
    return DenseOperator(dim, dim, std::move(e));
}

std::array<TradeoffWitness, 2> candidate_witnesses(const BoundPoint& point,
                                                   const DenseOperator& u0,
                                                   const DenseOperator& u1) {
    const PointContext ctx = make_point_context(point);
    return {stratum_witness(ctx, 0, u0), stratum_witness(ctx, 1, u1)};
}

double candidate_reusability(const BoundPoint& point, const DenseOperator& u0,
                             const DenseOperator& u1) {
    const auto ws = candidate_witnesses(point, u0, u1);
    return ws[0].eta + ws[1].eta;
}

double optimal_reusability(const BoundPoint& point) {
    const OracleConfig cfg = make_oracle_config(point.reliability);
    const double theta = optimal_theta(cfg);
    return candidate_reusability(point, build_recovery(0, theta), build_recovery(1, theta));
}

std::vector<TradeoffWitness> adversarial_bound_sweep(const BoundPoint& point,
                                                     std::size_t n_samples, RandomStream& rng) {
    if (n_samples == 0) {
        throw PreconditionError("sweep needs at least one sample");
    }
    const PointContext ctx = make_point_context(point);
    std::vector<TradeoffWitness> witnesses;
    witnesses.reserve(2 * n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const DenseOperator u = haar_unitary(4, rng);
        witnesses.push_back(stratum_witness(ctx, 0, u));
        witnesses.push_back(stratum_witness(ctx, 1, u));
    }
    return witnesses;
}

BoundSweepResult verify_bound(const BoundPoint& point, std::size_t n_samples,
                              std::uint64_t seed) {
    BoundSweepResult acc;
    RandomStream rng(seed, 1);
    sweep_point_into(acc, point, n_samples, rng);
    return acc;
}

BoundSweepResult verify_bound_random(std::size_t n_points, std::size_t samples_per_point,
                                     std::uint64_t seed) {
    BoundSweepResult acc;
    RandomStream point_rng(seed, 0);
    for (std::size_t i = 0; i < n_points; ++i) {
        const BoundPoint point{point_rng.next_double(), point_rng.next_double()};
        RandomStream rng(seed, 1 + i);
        sweep_point_into(acc, point, samples_per_point, rng);
    }
    return acc;
}

}  // namespace qreuse
