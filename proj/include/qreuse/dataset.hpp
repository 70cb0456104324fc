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
#include <string>
#include <vector>

#include "qreuse/statevec.hpp"

namespace qreuse {

/// Simulation representation of the data register.
///
/// kReduced works in the two-dimensional class span {|X0>, |X1>}, which is
/// exact for every protocol quantity; kFull keeps one basis state per item.
enum class SimMode { kReduced, kFull };

SimMode parse_sim_mode(const std::string& name);
std::string to_string(SimMode mode);

/// Binary concept over N items: per-item labels and query weights.
/// Weights are normalized to sum to one on construction.
struct ConceptDataset {
    std::size_t n_bits = 1;
    std::vector<int> labels;
    std::vector<double> weights;

    std::size_t size() const noexcept { return labels.size(); }
};

ConceptDataset make_concept_dataset(std::size_t n_bits, std::vector<int> labels,
                                    std::vector<double> weights);

/// Balanced two-class dataset over 2^n_bits items with class weight xi0 on
/// the first half (label 0) and 1 - xi0 on the second half (label 1).
ConceptDataset two_class_dataset(double xi0, std::size_t n_bits);

struct DatasetLoadResult {
    ConceptDataset dataset;
    double raw_weight_sum = 0.0;
    bool renormalized = false;
};

/// Parses "index,label,weight" CSV (one header line). Indices must cover
/// 0..N-1 exactly once. Weights are renormalized; `renormalized` is set
/// when the raw sum deviates from 1 by more than 1e-9 relative.
DatasetLoadResult load_dataset_file(const std::string& path);

/// load_dataset_file plus a stderr warning when weights were renormalized.
ConceptDataset load_dataset(const std::string& path);

/// Class weights and member lists of the binary partition.
struct Partition {
    double xi0 = 0.0;
    double xi1 = 0.0;
    std::vector<std::size_t> members0;
    std::vector<std::size_t> members1;
};

Partition partition(const ConceptDataset& ds);

/// Counts superposition initializations. Each qram_init call is one query.
struct QramCounter {
    std::uint64_t queries = 0;
};

/// The weighted superposition over the dataset, built without touching any
/// query counter (used for reference copies and analytic paths).
///
/// kFull: sum_i sqrt(w_i) |x_i> over one N-dimensional register.
/// kReduced: sqrt(xi0) |X0> + sqrt(xi1) |X1> over the class-span qubit.
StateVector dataset_superposition(const ConceptDataset& ds, SimMode mode);

/// dataset_superposition counted as one qRAM query.
StateVector qram_init(const ConceptDataset& ds, QramCounter& counter, SimMode mode);

/// Normalized class state |X_tau>. For an empty class this is undefined and
/// throws InvalidStateError; for a zero-weight class with members it falls
/// back to the uniform superposition over the members.
StateVector class_state(const ConceptDataset& ds, const Partition& part, int tau, SimMode mode);

}  // namespace qreuse
