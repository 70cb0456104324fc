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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "qreuse/postproc.hpp"

using namespace qreuse;

namespace {

struct Fixture {
    ConceptDataset ds;
    Partition part;
    OracleConfig cfg;

    Fixture(double xi0, double reliability, std::size_t n_bits = 1)
        : ds(two_class_dataset(xi0, n_bits)),
          part(partition(ds)),
          cfg(make_oracle_config(reliability)) {}
};

StateVector oracle_output(const Fixture& f, SimMode mode) {
    const DenseOperator oracle = build_oracle(f.cfg, f.part, mode);
    std::uint64_t queries = 0;
    return apply_oracle(tensor(StateVector::basis({2}, 0), dataset_superposition(f.ds, mode)),
                        oracle, queries);
}

}  // namespace

TEST_CASE("kraus pair carries the lambda weights per class", "[postproc]") {
    const Fixture f(0.5, 0.5);
    const KrausPair k = kraus_pair(f.cfg, f.part, SimMode::kReduced);

    REQUIRE(std::abs(k.a0(0, 0) - Amplitude(std::sqrt(0.75))) <= 1e-12);
    REQUIRE(std::abs(k.a0(1, 1) - Amplitude(std::sqrt(0.25))) <= 1e-12);
    REQUIRE(std::abs(k.a1(0, 0) - Amplitude(std::sqrt(0.25))) <= 1e-12);
    REQUIRE(std::abs(k.a1(1, 1) - Amplitude(std::sqrt(0.75))) <= 1e-12);

    const KrausPair projective = kraus_pair(make_oracle_config(1.0), f.part, SimMode::kReduced);
    REQUIRE(std::abs(projective.a0(0, 0) - Amplitude(1.0)) <= 1e-12);
    REQUIRE(std::abs(projective.a0(1, 1)) <= 1e-15);

    const KrausPair flat = kraus_pair(make_oracle_config(0.0), f.part, SimMode::kReduced);
    REQUIRE(std::abs(flat.a0(0, 0) - flat.a1(0, 0)) <= 1e-15);
}

TEST_CASE("kraus completeness holds across the reliability grid", "[postproc]") {
    for (const double L : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        for (const SimMode mode : {SimMode::kReduced, SimMode::kFull}) {
            const Fixture f(0.4, L, mode == SimMode::kFull ? 2 : 1);
            const KrausPair k = kraus_pair(f.cfg, f.part, mode);
            const DenseOperator sum = k.a0.adjoint() * k.a0 + k.a1.adjoint() * k.a1;
            for (std::size_t r = 0; r < sum.rows(); ++r) {
                for (std::size_t c = 0; c < sum.cols(); ++c) {
                    const Amplitude expect = r == c ? 1.0 : 0.0;
                    REQUIRE(std::abs(sum(r, c) - expect) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("kraus action factorizes into probability and post state", "[postproc]") {
    const Fixture f(0.7, 0.5);
    const KrausPair k = kraus_pair(f.cfg, f.part, SimMode::kReduced);
    const StateVector psi0 = dataset_superposition(f.ds, SimMode::kReduced);

    const auto [p0, phi0] = apply_weighted(k.a0, psi0, {0});
    REQUIRE(std::abs(p0 - 0.6) <= 1e-12);
    REQUIRE(std::abs(phi0[0] - Amplitude(std::sqrt(0.875))) <= 1e-12);
    REQUIRE(std::abs(phi0[1] - Amplitude(std::sqrt(0.125))) <= 1e-12);

    const auto [p1, phi1] = apply_weighted(k.a1, psi0, {0});
    REQUIRE(std::abs(p1 - 0.4) <= 1e-12);
    REQUIRE(std::abs(phi1[0] - Amplitude(std::sqrt(0.4375))) <= 1e-12);
    REQUIRE(std::abs(phi1[1] - Amplitude(std::sqrt(0.5625))) <= 1e-12);
}

TEST_CASE("alpha probabilities follow the reliability bias", "[postproc]") {
    const Fixture f(0.7, 0.5);
    const auto [p0, p1] = alpha_probabilities(f.cfg, f.part);
    REQUIRE(std::abs(p0 - 0.6) <= 1e-12);
    REQUIRE(std::abs(p1 - 0.4) <= 1e-12);

    for (const double L : {0.0, 0.2, 0.8, 1.0}) {
        const Fixture g(0.3, L);
        const auto [q0, q1] = alpha_probabilities(g.cfg, g.part);
        REQUIRE(std::abs(q0 + q1 - 1.0) <= 1e-12);
        REQUIRE(std::abs(q0 - (1.0 - 0.4 * L) / 2.0) <= 1e-12);
    }
}

TEST_CASE("measure_alpha matches the Kraus factorization", "[postproc]") {
    const Fixture f(0.7, 0.5);
    const StateVector out = oracle_output(f, SimMode::kReduced);
    const KrausPair k = kraus_pair(f.cfg, f.part, SimMode::kReduced);
    const StateVector psi0 = dataset_superposition(f.ds, SimMode::kReduced);

    RandomStream rng(17, 0);
    for (int i = 0; i < 32; ++i) {
        const AlphaResult r = measure_alpha(out, rng);
        const auto& a = r.m_alpha == 0 ? k.a0 : k.a1;
        const auto [p, phi] = apply_weighted(a, psi0, {0});
        REQUIRE(std::abs(r.probability - p) <= 1e-10);
        REQUIRE(fidelity(r.phi, phi) >= 1.0 - 1e-10);
        REQUIRE(r.phi.dims() == std::vector<std::size_t>{2});
    }
}

TEST_CASE("optimal theta interpolates between 0 and pi/2", "[postproc]") {
    REQUIRE(std::abs(optimal_theta(make_oracle_config(0.5)) - 0.9553166181245093) <= 1e-12);
    REQUIRE(optimal_theta(make_oracle_config(0.0)) == 0.0);
    REQUIRE(std::abs(optimal_theta(make_oracle_config(1.0)) - std::acos(-1.0) / 2.0) <= 1e-12);
}

TEST_CASE("controlled flip targets the class-1 sector", "[postproc]") {
    const DenseOperator c = controlled_ancilla_flip();
    REQUIRE(c.is_unitary(1e-12));
    REQUIRE(std::abs(c(0, 0) - Amplitude(1.0)) <= 1e-15);
    REQUIRE(std::abs(c(2, 2) - Amplitude(1.0)) <= 1e-15);
    REQUIRE(std::abs(c(3, 1) - Amplitude(1.0)) <= 1e-15);
    REQUIRE(std::abs(c(1, 3) - Amplitude(1.0)) <= 1e-15);
    REQUIRE(std::abs(c(1, 1)) <= 1e-15);
}

TEST_CASE("recovery unitary limits and domain", "[postproc]") {
    const double half_pi = std::acos(-1.0) / 2.0;
    for (const double theta : {0.0, 0.1, 0.5, 1.0, half_pi}) {
        REQUIRE(build_recovery(0, theta).is_unitary(1e-10));
        REQUIRE(build_recovery(1, theta).is_unitary(1e-10));
    }

    // Theta = 0, m_alpha = 0 degenerates to a pure ancilla flip.
    const DenseOperator u = build_recovery(0, 0.0);
    const DenseOperator expect = tensor(DenseOperator::pauli_x(), DenseOperator::identity(2));
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            REQUIRE(std::abs(u(r, c) - expect(r, c)) <= 1e-12);
        }
    }

    REQUIRE_THROWS_AS(build_recovery(2, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(build_recovery(0, -0.1), std::domain_error);
    REQUIRE_THROWS_AS(build_recovery(0, half_pi + 0.1), std::domain_error);
}

TEST_CASE("optimal recovery splits into exact branches", "[postproc]") {
    const Fixture f(0.7, 0.5);
    const StateVector psi0 = dataset_superposition(f.ds, SimMode::kReduced);
    const RecoverySetup rec = make_recovery_setup(f.cfg, f.ds, f.part, SimMode::kReduced);

    for (int m = 0; m < 2; ++m) {
        const auto [p_alpha, phi] = project(oracle_output(f, SimMode::kReduced), 0, m);
        const StateVector data = extract_register(phi, 1);
        const StateVector out = apply(rec.for_outcome(m), tensor(StateVector::basis({2}, 0), data),
                                      {0, 1});

        const double q_cons = m == 0 ? 0.35 / 0.6 : 0.15 / 0.4;
        const double q_incons = m == 0 ? 0.25 / 0.6 : 0.25 / 0.4;

        const auto [pc, post_c] = project(out, 0, static_cast<std::size_t>(m));
        REQUIRE(std::abs(pc - q_cons) <= 1e-12);
        REQUIRE(fidelity(extract_register(post_c, 1),
                         class_state(f.ds, f.part, m, SimMode::kReduced)) >= 1.0 - 1e-12);

        const auto [pi_, post_i] = project(out, 0, static_cast<std::size_t>(m ^ 1));
        REQUIRE(std::abs(pi_ - q_incons) <= 1e-12);
        REQUIRE(fidelity(extract_register(post_i, 1), psi0) >= 1.0 - 1e-12);
    }
}

TEST_CASE("suboptimal angles cannot reach the exact-recovery weight", "[postproc]") {
    const Fixture f(0.7, 0.5);
    const StateVector psi0 = dataset_superposition(f.ds, SimMode::kReduced);
    const double theta_star = optimal_theta(f.cfg);
    const double lambda_minus = f.cfg.lambda_minus;

    for (int m = 0; m < 2; ++m) {
        const auto [p_alpha, phi] = project(oracle_output(f, SimMode::kReduced), 0, m);
        const StateVector data = extract_register(phi, 1);
        const double q_star = lambda_minus / p_alpha;

        for (const double theta : {theta_star - 0.4, theta_star + 0.4, 0.2}) {
            const DenseOperator u = build_recovery(m, theta);
            const StateVector out = apply(u, tensor(StateVector::basis({2}, 0), data), {0, 1});
            const auto [q, post] = project(out, 0, static_cast<std::size_t>(m ^ 1));
            const double fid = fidelity(extract_register(post, 1), psi0);

            REQUIRE((fid < 1.0 - 1e-9 || q < q_star - 1e-12));
        }
    }
}

TEST_CASE("embedding acts on the class span and fixes its complement", "[postproc]") {
    const Fixture f(0.5, 0.5, 2);
    const RecoverySetup rec = make_recovery_setup(f.cfg, f.ds, f.part, SimMode::kFull);
    REQUIRE(rec.u0.rows() == 8);
    REQUIRE(rec.u0.is_unitary(1e-10));
    REQUIRE(rec.u1.is_unitary(1e-10));

    // Vector orthogonal to both class superpositions is left alone.
    const StateVector ortho({4}, {std::sqrt(0.5), -std::sqrt(0.5), 0.0, 0.0});
    const StateVector in = tensor(StateVector::basis({2}, 0), ortho);
    const StateVector out = apply(rec.u0, in, {0, 1});
    REQUIRE(fidelity(out, in) >= 1.0 - 1e-12);

    REQUIRE_THROWS_AS(embed_recovery(DenseOperator::identity(2), f.ds, f.part), DimensionError);
}

TEST_CASE("measure_beta classifies outcomes by the consistency rule", "[postproc]") {
    const Fixture f(0.7, 0.5);
    const RecoverySetup rec = make_recovery_setup(f.cfg, f.ds, f.part, SimMode::kReduced);
    const StateVector psi0 = dataset_superposition(f.ds, SimMode::kReduced);

    RandomStream rng(23, 1);
    for (int m = 0; m < 2; ++m) {
        const auto [p_alpha, phi] = project(oracle_output(f, SimMode::kReduced), 0, m);
        const StateVector data = extract_register(phi, 1);
        const StateVector out =
            apply(rec.for_outcome(m), tensor(StateVector::basis({2}, 0), data), {0, 1});

        for (int i = 0; i < 16; ++i) {
            const BetaResult r = measure_beta(out, m, rng);
            REQUIRE(r.consistent == (r.m_beta == m));
            if (r.consistent) {
                REQUIRE(r.kind == BetaKind::kExtractedAnswer);
                REQUIRE(fidelity(r.post, class_state(f.ds, f.part, m, SimMode::kReduced)) >=
                        1.0 - 1e-10);
            } else {
                REQUIRE(r.kind == BetaKind::kRecoveredInput);
                REQUIRE(fidelity(r.post, psi0) >= 1.0 - 1e-10);
            }
        }
        REQUIRE_THROWS_AS(measure_beta(out, 2, rng), PreconditionError);
    }
}
