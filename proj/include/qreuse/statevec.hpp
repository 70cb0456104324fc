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

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qreuse/errors.hpp"
#include "qreuse/rng.hpp"

namespace qreuse {

using Amplitude = std::complex<double>;

/// Tolerance for norm preservation and unitarity checks (default 1e-10).
double& norm_tolerance();

/// Cap on the composite state dimension (default 2^20). The CLI honours
/// the QREUSE_MAX_DIM environment variable to override it.
std::size_t& max_state_dimension();

/// Dense ket over an ordered list of finite registers.
///
/// Amplitudes are flattened row-major with the first register as the most
/// significant digit. Instances are immutable and always unit norm; the
/// constructor rejects vectors whose norm deviates from 1 beyond
/// norm_tolerance() and silently renormalizes smaller drift.
class StateVector {
  public:
    StateVector(std::vector<std::size_t> dims, std::vector<Amplitude> amps);

    /// Basis ket |index> over the given registers.
    static StateVector basis(std::vector<std::size_t> dims, std::size_t index);

    /// Trusted constructor for amplitudes already known to be unit norm.
    /// Skips validation so that copies stay bitwise identical.
    static StateVector from_normalized(std::vector<std::size_t> dims,
                                       std::vector<Amplitude> amps);

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::span<const Amplitude> amps() const noexcept { return amps_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::size_t num_registers() const noexcept { return dims_.size(); }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    /// Flattening stride of register `reg` (last register has stride 1).
    std::size_t stride(std::size_t reg) const;

  private:
    StateVector() = default;

    std::vector<std::size_t> dims_;
    std::vector<Amplitude> amps_;
};

/// Dense row-major matrix of amplitudes. Used both for unitaries and for
/// the non-unitary Kraus pieces of the oracle channel.
class DenseOperator {
  public:
    DenseOperator(std::size_t rows, std::size_t cols, std::vector<Amplitude> entries);

    static DenseOperator identity(std::size_t dim);
    static DenseOperator pauli_x();
    /// diag(1, e^{i theta}).
    static DenseOperator phase(double theta);
    static DenseOperator diagonal(std::vector<Amplitude> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Amplitude& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<const Amplitude> entries() const noexcept { return entries_; }

    DenseOperator adjoint() const;
    bool is_unitary(double tol) const;
    bool is_unitary() const;

    /// out = M * in. Spans must match cols()/rows().
    void multiply_into(std::span<const Amplitude> in, std::span<Amplitude> out) const;

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
    friend DenseOperator operator*(Amplitude scale, const DenseOperator& a);
    friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
    friend DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Amplitude> entries_;
};

struct MeasurementResult {
    std::size_t outcome = 0;
    double probability = 0.0;
    StateVector post_state;
};

/// Kronecker product; the registers of `a` become the leading registers.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Applies a square operator to the listed registers (in the given order)
/// and verifies it acted isometrically on the state, renormalizing drift
/// within norm_tolerance() and throwing NonIsometryError beyond it.
StateVector apply(const DenseOperator& op, const StateVector& state,
                  std::span<const std::size_t> targets);
StateVector apply(const DenseOperator& op, const StateVector& state,
                  std::initializer_list<std::size_t> targets);

/// Applies a (generally non-isometric) operator and returns the Born weight
/// of the branch together with the renormalized post state. Throws
/// InvalidStateError when the branch weight vanishes.
std::pair<double, StateVector> apply_weighted(const DenseOperator& op, const StateVector& state,
                                              std::span<const std::size_t> targets);
std::pair<double, StateVector> apply_weighted(const DenseOperator& op, const StateVector& state,
                                              std::initializer_list<std::size_t> targets);

/// Marginal outcome distribution of one register.
std::vector<double> born_probabilities(const StateVector& state, std::size_t reg);

/// Samples a projective measurement of one register and collapses it.
MeasurementResult measure(const StateVector& state, std::size_t reg, RandomStream& rng);

/// Deterministically projects one register onto `outcome`; returns the
/// branch probability and the renormalized post state.
std::pair<double, StateVector> project(const StateVector& state, std::size_t reg,
                                       std::size_t outcome);

/// Slices out one register from a product state. Every other register must
/// hold a definite basis state, otherwise PreconditionError.
StateVector extract_register(const StateVector& state, std::size_t reg);

/// |<a|b>|^2 for states of identical shape.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qreuse
