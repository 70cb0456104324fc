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

#include "qreuse/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace qreuse {
namespace {

// Norm drift below this is left untouched so that norm-preserving maps
// keep amplitudes bitwise stable; larger drift inside norm_tolerance()
// is snapped back to unit norm.
constexpr double kExactNormEps = 1e-13;

// Branch weights at or below this are treated as vanishing.
constexpr double kMinBranchWeight = 1e-18;

// Amplitudes with weight below this are ignored when checking separability.
constexpr double kDustWeight = 1e-24;

double norm_squared(std::span<const Amplitude> amps) {
    double n2 = 0.0;
    for (const auto& a : amps) {
        n2 += std::norm(a);
    }
    return n2;
}

void check_finite(std::span<const Amplitude> values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidStateError(std::string(what) + " contains a non-finite amplitude");
        }
    }
}

void snap_norm(std::vector<Amplitude>& amps, double n2) {
    if (std::abs(n2 - 1.0) <= kExactNormEps) {
        return;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps) {
        a *= inv;
    }
}

std::size_t checked_total_dimension(const std::vector<std::size_t>& dims) {
    if (dims.empty()) {
        throw DimensionError("state needs at least one register");
    }
    std::size_t total = 1;
    for (const std::size_t d : dims) {
        if (d == 0) {
            throw DimensionError("register dimension must be positive");
        }
        if (total > max_state_dimension() / d) {
            throw CapacityError("state dimension exceeds max_state_dimension()");
        }
        total *= d;
    }
    return total;
}

std::vector<std::size_t> register_strides(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
        stride[i] = s;
        s *= dims[i];
    }
    return stride;
}

void validate_targets(const StateVector& state, const DenseOperator& op,
                      std::span<const std::size_t> targets) {
    if (targets.empty()) {
        throw DimensionError("apply needs at least one target register");
    }
    const std::size_t n = state.num_registers();
    std::size_t block = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::size_t t = targets[i];
        if (t >= n) {
            throw DimensionError("target register index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[j] == t) {
                throw DimensionError("duplicate target register");
            }
        }
        block *= state.dims()[t];
    }
    if (op.rows() != op.cols()) {
        throw DimensionError("operator acting on a state must be square");
    }
    if (op.cols() != block) {
        throw DimensionError("operator dimension does not match target registers");
    }
}

bool is_natural_full_span(std::span<const std::size_t> targets, std::size_t n) {
    if (targets.size() != n) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (targets[i] != i) {
            return false;
        }
    }
    return true;
}

// Applies op to the listed registers without any norm handling.
std::vector<Amplitude> apply_raw(const DenseOperator& op, const StateVector& state,
                                 std::span<const std::size_t> targets) {
    validate_targets(state, op, targets);
    const auto& dims = state.dims();
    const std::size_t n = dims.size();
    const std::size_t size = state.size();
    const std::size_t block = op.cols();
    std::vector<Amplitude> out(size);

    if (is_natural_full_span(targets, n)) {
        op.multiply_into(state.amps(), out);
        return out;
    }

    const std::vector<std::size_t> stride = register_strides(dims);

    std::vector<std::size_t> toffset(block);
    for (std::size_t k = 0; k < block; ++k) {
        std::size_t rem = k;
        std::size_t off = 0;
        for (std::size_t j = targets.size(); j-- > 0;) {
            const std::size_t d = dims[targets[j]];
            off += (rem % d) * stride[targets[j]];
            rem /= d;
        }
        toffset[k] = off;
    }

    std::vector<std::size_t> odims;
    std::vector<std::size_t> ostride;
    for (std::size_t r = 0; r < n; ++r) {
        if (std::find(targets.begin(), targets.end(), r) == targets.end()) {
            odims.push_back(dims[r]);
            ostride.push_back(stride[r]);
        }
    }

    std::vector<Amplitude> in_block(block);
    std::vector<Amplitude> out_block(block);
    std::vector<std::size_t> ctr(odims.size(), 0);
    std::size_t base = 0;
    const std::size_t outer = size / block;
    const auto src = state.amps();
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t k = 0; k < block; ++k) {
            in_block[k] = src[base + toffset[k]];
        }
        op.multiply_into(in_block, out_block);
        for (std::size_t k = 0; k < block; ++k) {
            out[base + toffset[k]] = out_block[k];
        }
        for (std::size_t j = ctr.size(); j-- > 0;) {
            base += ostride[j];
            if (++ctr[j] < odims[j]) {
                break;
            }
            base -= ostride[j] * odims[j];
            ctr[j] = 0;
        }
    }
    return out;
}

// Collapses `reg` onto `outcome` given the branch weight already computed.
StateVector collapse(const StateVector& state, std::size_t reg, std::size_t outcome,
                     double weight) {
    const std::size_t size = state.size();
    const std::size_t s = state.stride(reg);
    const std::size_t d = state.dims()[reg];
    const double inv = 1.0 / std::sqrt(weight);
    std::vector<Amplitude> out(size);
    const auto src = state.amps();
    const std::size_t period = s * d;
    for (std::size_t hi = 0; hi < size; hi += period) {
        const std::size_t base = hi + outcome * s;
        for (std::size_t lo = 0; lo < s; ++lo) {
            out[base + lo] = src[base + lo] * inv;
        }
    }
    return StateVector::from_normalized(std::vector<std::size_t>(state.dims()), std::move(out));
}

double marginal_weight(const StateVector& state, std::size_t reg, std::size_t outcome) {
    const std::size_t size = state.size();
    const std::size_t s = state.stride(reg);
    const std::size_t d = state.dims()[reg];
    const std::size_t period = s * d;
    double w = 0.0;
    const auto src = state.amps();
    for (std::size_t hi = 0; hi < size; hi += period) {
        const std::size_t base = hi + outcome * s;
        for (std::size_t lo = 0; lo < s; ++lo) {
            w += std::norm(src[base + lo]);
        }
    }
    return w;
}

}  // namespace

double& norm_tolerance() {
    static double tol = 1e-10;
    return tol;
}

std::size_t& max_state_dimension() {
    static std::size_t cap = std::size_t{1} << 20;
    return cap;
}

StateVector::StateVector(std::vector<std::size_t> dims, std::vector<Amplitude> amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    const std::size_t total = checked_total_dimension(dims_);
    if (amps_.size() != total) {
        throw DimensionError("amplitude count does not match register dimensions");
    }
    check_finite(amps_, "state vector");
    const double n2 = norm_squared(amps_);
    if (std::abs(std::sqrt(n2) - 1.0) > norm_tolerance()) {
        throw InvalidStateError("state vector is not normalized");
    }
    snap_norm(amps_, n2);
}

StateVector StateVector::basis(std::vector<std::size_t> dims, std::size_t index) {
    const std::size_t total = checked_total_dimension(dims);
    if (index >= total) {
        throw DimensionError("basis index out of range");
    }
    std::vector<Amplitude> amps(total, Amplitude{0.0, 0.0});
    amps[index] = Amplitude{1.0, 0.0};
    return from_normalized(std::move(dims), std::move(amps));
}

StateVector StateVector::from_normalized(std::vector<std::size_t> dims,
                                         std::vector<Amplitude> amps) {
    StateVector sv;
    sv.dims_ = std::move(dims);
    sv.amps_ = std::move(amps);
    return sv;
}

std::size_t StateVector::stride(std::size_t reg) const {
    if (reg >= dims_.size()) {
        throw DimensionError("register index out of range");
    }
    std::size_t s = 1;
    for (std::size_t i = dims_.size(); i-- > reg + 1;) {
        s *= dims_[i];
    }
    return s;
}

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols, std::vector<Amplitude> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("operator dimensions must be positive");
    }
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("entry count does not match operator dimensions");
    }
    check_finite(entries_, "operator");
}

DenseOperator DenseOperator::identity(std::size_t dim) {
    std::vector<Amplitude> e(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        e[i * dim + i] = Amplitude{1.0, 0.0};
    }
    return DenseOperator(dim, dim, std::move(e));
}

DenseOperator DenseOperator::pauli_x() {
    return DenseOperator(2, 2, {Amplitude{0.0, 0.0}, Amplitude{1.0, 0.0},
                                Amplitude{1.0, 0.0}, Amplitude{0.0, 0.0}});
}

DenseOperator DenseOperator::phase(double theta) {
    return diagonal({Amplitude{1.0, 0.0}, std::polar(1.0, theta)});
}

DenseOperator DenseOperator::diagonal(std::vector<Amplitude> diag) {
    const std::size_t dim = diag.size();
    std::vector<Amplitude> e(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        e[i * dim + i] = diag[i];
    }
    return DenseOperator(dim, dim, std::move(e));
}

DenseOperator DenseOperator::adjoint() const {
    std::vector<Amplitude> e(entries_.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            e[c * rows_ + r] = std::conj((*this)(r, c));
        }
    }
    return DenseOperator(cols_, rows_, std::move(e));
}

bool DenseOperator::is_unitary(double tol) const {
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t i = 0; i < cols_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            Amplitude dot{0.0, 0.0};
            for (std::size_t k = 0; k < rows_; ++k) {
                dot += std::conj((*this)(k, i)) * (*this)(k, j);
            }
            const Amplitude expect = (i == j) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            if (std::abs(dot - expect) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool DenseOperator::is_unitary() const { return is_unitary(norm_tolerance()); }

void DenseOperator::multiply_into(std::span<const Amplitude> in,
                                  std::span<Amplitude> out) const {
    if (in.size() != cols_ || out.size() != rows_) {
        throw DimensionError("vector length does not match operator dimensions");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        Amplitude acc{0.0, 0.0};
        const Amplitude* row = entries_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += row[c] * in[c];
        }
        out[r] = acc;
    }
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionError("operator product dimension mismatch");
    }
    std::vector<Amplitude> e(a.rows_ * b.cols_, Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Amplitude ark = a(r, k);
            for (std::size_t c = 0; c < b.cols_; ++c) {
                e[r * b.cols_ + c] += ark * b(k, c);
            }
        }
    }
    return DenseOperator(a.rows_, b.cols_, std::move(e));
}

DenseOperator operator*(Amplitude scale, const DenseOperator& a) {
    std::vector<Amplitude> e(a.entries_);
    for (auto& v : e) {
        v *= scale;
    }
    return DenseOperator(a.rows_, a.cols_, std::move(e));
}

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw DimensionError("operator sum dimension mismatch");
    }
    std::vector<Amplitude> e(a.entries_);
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] += b.entries_[i];
    }
    return DenseOperator(a.rows_, a.cols_, std::move(e));
}

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
    const std::size_t rows = a.rows_ * b.rows_;
    const std::size_t cols = a.cols_ * b.cols_;
    std::vector<Amplitude> e(rows * cols);
    for (std::size_t ra = 0; ra < a.rows_; ++ra) {
        for (std::size_t rb = 0; rb < b.rows_; ++rb) {
            for (std::size_t ca = 0; ca < a.cols_; ++ca) {
                for (std::size_t cb = 0; cb < b.cols_; ++cb) {
                    e[(ra * b.rows_ + rb) * cols + (ca * b.cols_ + cb)] = a(ra, ca) * b(rb, cb);
                }
            }
        }
    }
    return DenseOperator(rows, cols, std::move(e));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::size_t> dims(a.dims());
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    checked_total_dimension(dims);
    std::vector<Amplitude> amps(a.size() * b.size());
    const auto av = a.amps();
    const auto bv = b.amps();
    std::size_t k = 0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        for (std::size_t j = 0; j < bv.size(); ++j) {
            amps[k++] = av[i] * bv[j];
        }
    }
    return StateVector::from_normalized(std::move(dims), std::move(amps));
}

StateVector apply(const DenseOperator& op, const StateVector& state,
                  std::span<const std::size_t> targets) {
    std::vector<Amplitude> out = apply_raw(op, state, targets);
    const double n2 = norm_squared(out);
    if (std::abs(std::sqrt(n2) - 1.0) > norm_tolerance()) {
        throw NonIsometryError("operator did not act isometrically on the state");
    }
    snap_norm(out, n2);
    return StateVector::from_normalized(std::vector<std::size_t>(state.dims()), std::move(out));
}

StateVector apply(const DenseOperator& op, const StateVector& state,
                  std::initializer_list<std::size_t> targets) {
    return apply(op, state, std::span<const std::size_t>(targets.begin(), targets.size()));
}

std::pair<double, StateVector> apply_weighted(const DenseOperator& op, const StateVector& state,
                                              std::span<const std::size_t> targets) {
    std::vector<Amplitude> out = apply_raw(op, state, targets);
    const double weight = norm_squared(out);
    if (weight <= kMinBranchWeight) {
        throw InvalidStateError("operator annihilated the state");
    }
    snap_norm(out, weight);
    return {weight,
            StateVector::from_normalized(std::vector<std::size_t>(state.dims()), std::move(out))};
}

std::pair<double, StateVector> apply_weighted(const DenseOperator& op, const StateVector& state,
                                              std::initializer_list<std::size_t> targets) {
    return apply_weighted(op, state, std::span<const std::size_t>(targets.begin(), targets.size()));
}

std::vector<double> born_probabilities(const StateVector& state, std::size_t reg) {
    if (reg >= state.num_registers()) {
        throw DimensionError("register index out of range");
    }
    const std::size_t d = state.dims()[reg];
    const std::size_t s = state.stride(reg);
    std::vector<double> p(d, 0.0);
    const auto src = state.amps();
    for (std::size_t i = 0; i < src.size(); ++i) {
        p[(i / s) % d] += std::norm(src[i]);
    }
    return p;
}

MeasurementResult measure(const StateVector& state, std::size_t reg, RandomStream& rng) {
    if (reg >= state.num_registers()) {
        throw DimensionError("register index out of range");
    }
    const std::size_t d = state.dims()[reg];
    const std::size_t s = state.stride(reg);
    const std::size_t period = s * d;
    const auto src = state.amps();

    double local[16];
    std::vector<double> heap;
    double* p = local;
    if (d > 16) {
        heap.assign(d, 0.0);
        p = heap.data();
    } else {
        std::fill(local, local + d, 0.0);
    }
    for (std::size_t hi = 0; hi < src.size(); hi += period) {
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t base = hi + k * s;
            double acc = 0.0;
            for (std::size_t lo = 0; lo < s; ++lo) {
                acc += std::norm(src[base + lo]);
            }
            p[k] += acc;
        }
    }
    double total = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        total += p[k];
    }
    if (total <= kMinBranchWeight) {
        throw InvalidStateError("measurement marginal has zero weight");
    }

    const double u = rng.next_double() * total;
    double cum = 0.0;
    std::size_t outcome = d;
    std::size_t last_nonzero = d;
    for (std::size_t k = 0; k < d; ++k) {
        if (p[k] <= 0.0) {
            continue;
        }
        last_nonzero = k;
        cum += p[k];
        if (u < cum) {
            outcome = k;
            break;
        }
    }
    if (outcome == d) {
        outcome = last_nonzero;
    }
    return MeasurementResult{outcome, p[outcome] / total, collapse(state, reg, outcome, p[outcome])};
}

std::pair<double, StateVector> project(const StateVector& state, std::size_t reg,
                                       std::size_t outcome) {
    if (reg >= state.num_registers()) {
        throw DimensionError("register index out of range");
    }
    if (outcome >= state.dims()[reg]) {
        throw DimensionError("projection outcome out of range");
    }
    const double w = marginal_weight(state, reg, outcome);
    if (w <= kMinBranchWeight) {
        throw InvalidStateError("projection onto a zero-probability outcome");
    }
    return {w, collapse(state, reg, outcome, w)};
}

StateVector extract_register(const StateVector& state, std::size_t reg) {
    if (reg >= state.num_registers()) {
        throw DimensionError("register index out of range");
    }
    const std::size_t d = state.dims()[reg];
    const std::size_t s = state.stride(reg);
    const auto src = state.amps();

    std::size_t pattern = src.size();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (std::norm(src[i]) <= kDustWeight) {
            continue;
        }
        const std::size_t residue = i - ((i / s) % d) * s;
        if (pattern == src.size()) {
            pattern = residue;
        } else if (residue != pattern) {
            throw PreconditionError("register is entangled with the rest of the state");
        }
    }
    if (pattern == src.size()) {
        throw InvalidStateError("state has no amplitude above the dust threshold");
    }

    std::vector<Amplitude> out(d);
    for (std::size_t k = 0; k < d; ++k) {
        out[k] = src[pattern + k * s];
    }
    const double n2 = norm_squared(out);
    snap_norm(out, n2);
    return StateVector::from_normalized({d}, std::move(out));
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dims() != b.dims()) {
        throw DimensionError("fidelity requires states of identical shape");
    }
    Amplitude inner{0.0, 0.0};
    const auto av = a.amps();
    const auto bv = b.amps();
    for (std::size_t i = 0; i < av.size(); ++i) {
        inner += std::conj(av[i]) * bv[i];
    }
    return std::norm(inner);
}

}  // namespace qreuse
