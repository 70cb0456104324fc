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
#include <cstring>
#include <vector>

#include "qreuse/statevec.hpp"

using namespace qreuse;

namespace {

bool close(const Amplitude& a, const Amplitude& b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

bool bitwise_equal(const Amplitude& a, const Amplitude& b) {
    return std::memcmp(&a, &b, sizeof(Amplitude)) == 0;
}

}  // namespace

TEST_CASE("tensor places the first factor in the leading register", "[statevec]") {
    const StateVector data({2}, {std::sqrt(0.7), std::sqrt(0.3)});
    const StateVector answer = StateVector::basis({2}, 0);
    const StateVector joint = tensor(data, answer);

    REQUIRE(joint.dims() == std::vector<std::size_t>{2, 2});
    REQUIRE(close(joint[0], std::sqrt(0.7)));
    REQUIRE(close(joint[1], 0.0));
    REQUIRE(close(joint[2], std::sqrt(0.3)));
    REQUIRE(close(joint[3], 0.0));
}

TEST_CASE("strides follow row-major flattening", "[statevec]") {
    const StateVector s = StateVector::basis({2, 3, 4}, 5);
    REQUIRE(s.size() == 24);
    REQUIRE(s.stride(0) == 12);
    REQUIRE(s.stride(1) == 4);
    REQUIRE(s.stride(2) == 1);
    REQUIRE(close(s[5], 1.0));
}

TEST_CASE("constructor validates shape and norm", "[statevec]") {
    REQUIRE_THROWS_AS(StateVector({2}, {1.0, 0.0, 0.0}), DimensionError);
    REQUIRE_THROWS_AS(StateVector({2}, {1.0, 1.0}), InvalidStateError);
    REQUIRE_THROWS_AS(StateVector({}, {}), DimensionError);
    REQUIRE_THROWS_AS(StateVector::basis({2}, 2), DimensionError);

    const double nan = std::nan("");
    REQUIRE_THROWS_AS(StateVector({2}, {nan, 0.0}), InvalidStateError);
}

TEST_CASE("constructor renormalizes small drift only", "[statevec]") {
    const double drift = 1.0 + 3e-11;
    const StateVector s({2}, {drift, 0.0});
    double norm_sq = 0.0;
    for (const Amplitude& a : s.amps()) {
        norm_sq += std::norm(a);
    }
    REQUIRE(std::abs(norm_sq - 1.0) <= 1e-15);
}

TEST_CASE("dimension cap is enforced", "[statevec]") {
    const std::size_t saved = max_state_dimension();
    max_state_dimension() = 8;
    REQUIRE_THROWS_AS(StateVector::basis({2, 2, 2, 2}, 0), CapacityError);
    max_state_dimension() = saved;
}

TEST_CASE("phase gate flips the relative sign at theta = pi", "[statevec]") {
    const double pi = std::acos(-1.0);
    const StateVector plus({2}, {std::sqrt(0.5), std::sqrt(0.5)});
    const StateVector out = apply(DenseOperator::phase(pi), plus, {0});
    REQUIRE(close(out[0], std::sqrt(0.5)));
    REQUIRE(close(out[1], -std::sqrt(0.5)));
}

TEST_CASE("apply with identity is bitwise identity", "[statevec]") {
    const Amplitude a = std::polar(std::sqrt(0.3), 0.7);
    const Amplitude b = std::polar(std::sqrt(0.7), -1.1);
    const StateVector s({2, 2}, {a * std::sqrt(0.4), a * std::sqrt(0.6), b * std::sqrt(0.1),
                                 b * std::sqrt(0.9)});

    for (std::size_t reg = 0; reg < 2; ++reg) {
        const StateVector out = apply(DenseOperator::identity(2), s, {reg});
        for (std::size_t i = 0; i < s.size(); ++i) {
            REQUIRE(bitwise_equal(out[i], s[i]));
        }
    }
}

TEST_CASE("apply respects target order", "[statevec]") {
    const StateVector start = StateVector::basis({2, 2}, 0);
    const DenseOperator flip_second = tensor(DenseOperator::identity(2), DenseOperator::pauli_x());

    const StateVector natural = apply(flip_second, start, {0, 1});
    REQUIRE(close(natural[1], 1.0));

    const DenseOperator flip_first = tensor(DenseOperator::pauli_x(), DenseOperator::identity(2));
    const StateVector swapped = apply(flip_first, start, {1, 0});
    REQUIRE(close(swapped[1], 1.0));
}

TEST_CASE("apply rejects invalid targets and non-isometric action", "[statevec]") {
    const StateVector s = StateVector::basis({2, 2}, 0);
    const DenseOperator x = DenseOperator::pauli_x();
    REQUIRE_THROWS_AS(apply(x, s, {2}), DimensionError);
    REQUIRE_THROWS_AS(apply(tensor(x, x), s, {0, 0}), DimensionError);
    REQUIRE_THROWS_AS(apply(x, s, std::initializer_list<std::size_t>{}), DimensionError);
    REQUIRE_THROWS_AS(apply(tensor(x, x), s, {0}), DimensionError);

    const DenseOperator half = DenseOperator::diagonal({0.5, 0.5});
    REQUIRE_THROWS_AS(apply(half, s, {0}), NonIsometryError);
}

TEST_CASE("apply_weighted returns the Born weight of a Kraus branch", "[statevec]") {
    const StateVector s({2}, {std::sqrt(0.6), std::sqrt(0.4)});
    const DenseOperator a0 = DenseOperator::diagonal({std::sqrt(0.75), std::sqrt(0.25)});

    const auto [weight, post] = apply_weighted(a0, s, {0});
    REQUIRE(std::abs(weight - 0.55) <= 1e-12);
    REQUIRE(close(post[0], std::sqrt(0.45 / 0.55)));
    REQUIRE(close(post[1], std::sqrt(0.10 / 0.55)));

    const DenseOperator kill = DenseOperator::diagonal({0.0, 0.0});
    REQUIRE_THROWS_AS(apply_weighted(kill, s, {0}), InvalidStateError);
}

TEST_CASE("born probabilities give per-register marginals", "[statevec]") {
    const StateVector single({2}, {std::sqrt(0.6), std::sqrt(0.4)});
    const auto p = born_probabilities(single, 0);
    REQUIRE(std::abs(p[0] - 0.6) <= 1e-12);
    REQUIRE(std::abs(p[1] - 0.4) <= 1e-12);

    const StateVector pair({2, 2},
                           {std::sqrt(0.1), std::sqrt(0.2), std::sqrt(0.3), std::sqrt(0.4)});
    const auto p0 = born_probabilities(pair, 0);
    REQUIRE(std::abs(p0[0] - 0.3) <= 1e-12);
    REQUIRE(std::abs(p0[1] - 0.7) <= 1e-12);
    const auto p1 = born_probabilities(pair, 1);
    REQUIRE(std::abs(p1[0] - 0.4) <= 1e-12);
    REQUIRE(std::abs(p1[1] - 0.6) <= 1e-12);

    REQUIRE_THROWS_AS(born_probabilities(pair, 2), DimensionError);
}

TEST_CASE("measurement frequencies match Born probabilities", "[statevec]") {
    const StateVector s({2}, {std::sqrt(0.3), std::sqrt(0.7)});
    RandomStream rng(11, 0);
    const int n = 100000;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
        const MeasurementResult r = measure(s, 0, rng);
        if (r.outcome == 0) {
            ++zeros;
            REQUIRE(std::abs(r.probability - 0.3) <= 1e-12);
        }
    }
    const double freq = static_cast<double>(zeros) / n;
    const double sigma = std::sqrt(0.3 * 0.7 / n);
    REQUIRE(std::abs(freq - 0.3) <= 4.0 * sigma);
}

TEST_CASE("measurement collapses the measured register", "[statevec]") {
    const StateVector bell({2, 2}, {std::sqrt(0.5), 0.0, 0.0, std::sqrt(0.5)});
    RandomStream rng(3, 0);
    const MeasurementResult r = measure(bell, 0, rng);
    REQUIRE(std::abs(r.probability - 0.5) <= 1e-12);
    const std::size_t expect = r.outcome == 0 ? 0 : 3;
    REQUIRE(close(r.post_state[expect], 1.0));
}

TEST_CASE("measurement sampling is reproducible per stream", "[statevec]") {
    const StateVector s({2}, {std::sqrt(0.5), std::sqrt(0.5)});
    RandomStream a(5, 7);
    RandomStream b(5, 7);
    for (int i = 0; i < 64; ++i) {
        REQUIRE(measure(s, 0, a).outcome == measure(s, 0, b).outcome);
    }
}

TEST_CASE("project selects a definite branch", "[statevec]") {
    const StateVector s({2}, {std::sqrt(0.3), std::sqrt(0.7)});
    const auto [prob, post] = project(s, 0, 1);
    REQUIRE(std::abs(prob - 0.7) <= 1e-12);
    REQUIRE(close(post[1], 1.0));

    const StateVector basis0 = StateVector::basis({2}, 0);
    REQUIRE_THROWS_AS(project(basis0, 0, 1), InvalidStateError);
    REQUIRE_THROWS_AS(project(basis0, 0, 2), DimensionError);
}

TEST_CASE("extract_register needs the other registers definite", "[statevec]") {
    const StateVector a({2}, {std::sqrt(0.2), Amplitude(0.0, std::sqrt(0.8))});
    const StateVector b({3}, {std::sqrt(0.5), std::sqrt(0.25), std::sqrt(0.25)});

    const StateVector got_b = extract_register(tensor(StateVector::basis({2}, 1), b), 1);
    REQUIRE(got_b.dims() == std::vector<std::size_t>{3});
    REQUIRE(fidelity(got_b, b) >= 1.0 - 1e-12);

    const StateVector got_a = extract_register(tensor(a, StateVector::basis({3}, 2)), 0);
    REQUIRE(fidelity(got_a, a) >= 1.0 - 1e-12);

    // Both a product of superpositions and an entangled pair leave the other
    // register indefinite.
    REQUIRE_THROWS_AS(extract_register(tensor(a, b), 1), PreconditionError);
    const StateVector bell({2, 2}, {std::sqrt(0.5), 0.0, 0.0, std::sqrt(0.5)});
    REQUIRE_THROWS_AS(extract_register(bell, 0), PreconditionError);
    REQUIRE_THROWS_AS(extract_register(bell, 2), DimensionError);
}

TEST_CASE("fidelity is the squared overlap", "[statevec]") {
    const StateVector plus({2}, {std::sqrt(0.5), std::sqrt(0.5)});
    const StateVector minus({2}, {std::sqrt(0.5), -std::sqrt(0.5)});
    const StateVector zero = StateVector::basis({2}, 0);

    REQUIRE(std::abs(fidelity(plus, minus)) <= 1e-12);
    REQUIRE(std::abs(fidelity(plus, plus) - 1.0) <= 1e-12);
    REQUIRE(std::abs(fidelity(zero, plus) - 0.5) <= 1e-12);

    const StateVector triple = StateVector::basis({3}, 0);
    REQUIRE_THROWS_AS(fidelity(zero, triple), DimensionError);
}

TEST_CASE("dense operator algebra", "[statevec]") {
    const DenseOperator x = DenseOperator::pauli_x();
    const DenseOperator xx = x * x;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            REQUIRE(close(xx(r, c), r == c ? 1.0 : 0.0));
        }
    }

    const DenseOperator p = DenseOperator::phase(0.3);
    REQUIRE(close(p.adjoint()(1, 1), std::conj(p(1, 1))));
    REQUIRE(p.is_unitary(1e-12));
    REQUIRE_FALSE(DenseOperator::diagonal({0.5, 0.5}).is_unitary(1e-12));

    const DenseOperator t = tensor(x, DenseOperator::identity(2));
    REQUIRE(t.rows() == 4);
    REQUIRE(close(t(0, 2), 1.0));
    REQUIRE(close(t(2, 0), 1.0));

    const DenseOperator sum = DenseOperator::identity(2) + (Amplitude(-1.0) * x);
    REQUIRE(close(sum(0, 0), 1.0));
    REQUIRE(close(sum(0, 1), -1.0));

    REQUIRE_THROWS_AS(x * DenseOperator::identity(3), DimensionError);
}
