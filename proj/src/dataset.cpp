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

#include "qreuse/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qreuse {
namespace {

constexpr double kRenormWarnThreshold = 1e-9;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::size_t bits_for_items(std::size_t n_items) {
    std::size_t bits = 1;
    while ((std::size_t{1} << bits) < n_items) {
        ++bits;
    }
    return bits;
}

}  // namespace

SimMode parse_sim_mode(const std::string& name) {
    if (name == "reduced") {
        return SimMode::kReduced;
    }
    if (name == "full") {
        return SimMode::kFull;
    }
    throw UsageError("unknown mode '" + name + "' (expected 'reduced' or 'full')");
}

std::string to_string(SimMode mode) {
    return mode == SimMode::kReduced ? "reduced" : "full";
}

ConceptDataset make_concept_dataset(std::size_t n_bits, std::vector<int> labels,
                                    std::vector<double> weights) {
    if (labels.empty()) {
        throw InvalidStateError("dataset must contain at least one item");
    }
    if (labels.size() != weights.size()) {
        throw DimensionError("label and weight counts differ");
    }
    if (n_bits == 0 || n_bits >= 64) {
        throw DimensionError("n_bits must be in [1, 63]");
    }
    if (labels.size() > (std::size_t{1} << n_bits)) {
        throw CapacityError("dataset has more items than 2^n_bits");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw InvalidStateError("labels must be 0 or 1");
        }
        if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
            throw InvalidStateError("weights must be finite and non-negative");
        }
        sum += weights[i];
    }
    if (sum <= 0.0) {
        throw InvalidStateError("weights must not all vanish");
    }
    for (auto& w : weights) {
        w /= sum;
    }
    return ConceptDataset{n_bits, std::move(labels), std::move(weights)};
}

ConceptDataset two_class_dataset(double xi0, std::size_t n_bits) {
    if (!(xi0 >= 0.0 && xi0 <= 1.0)) {
        throw std::domain_error("xi0 must lie in [0, 1]");
    }
    if (n_bits == 0 || n_bits > 20) {
        throw DimensionError("two_class_dataset supports n_bits in [1, 20]");
    }
    const std::size_t n = std::size_t{1} << n_bits;
    const std::size_t half = n / 2;
    std::vector<int> labels(n, 0);
    std::vector<double> weights(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i < half ? 0 : 1;
        weights[i] = (i < half ? xi0 : 1.0 - xi0) / static_cast<double>(half);
    }
    return make_concept_dataset(n_bits, std::move(labels), std::move(weights));
}

DatasetLoadResult load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open dataset file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("dataset file '" + path + "' is empty");
    }

    std::vector<std::size_t> indices;
    std::vector<int> labels;
    std::vector<double> weights;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string field;
        std::string fields[3];
        std::size_t n_fields = 0;
        while (std::getline(row, field, ',')) {
            if (n_fields >= 3) {
                ++n_fields;
                break;
            }
            fields[n_fields++] = trim(field);
        }
        if (n_fields != 3) {
            throw IoError("dataset '" + path + "' line " + std::to_string(lineno) +
                          ": expected 'index,label,weight'");
        }
        try {
            indices.push_back(std::stoull(fields[0]));
            labels.push_back(std::stoi(fields[1]));
            weights.push_back(std::stod(fields[2]));
        } catch (const std::exception&) {
            throw IoError("dataset '" + path + "' line " + std::to_string(lineno) +
                          ": malformed field");
        }
    }
    if (indices.empty()) {
        throw IoError("dataset file '" + path + "' has no data rows");
    }

    const std::size_t n = indices.size();
    std::vector<int> ordered_labels(n, -1);
    std::vector<double> ordered_weights(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        if (indices[r] >= n) {
            throw IoError("dataset '" + path + "': indices must cover 0.." +
                          std::to_string(n - 1) + " exactly once");
        }
        if (ordered_labels[indices[r]] != -1) {
            throw IoError("dataset '" + path + "': duplicate index " +
                          std::to_string(indices[r]));
        }
        ordered_labels[indices[r]] = labels[r];
        ordered_weights[indices[r]] = weights[r];
    }

    double raw_sum = 0.0;
    for (const double w : ordered_weights) {
        raw_sum += w;
    }
    DatasetLoadResult result;
    result.raw_weight_sum = raw_sum;
    result.renormalized = std::abs(raw_sum - 1.0) > kRenormWarnThreshold;
    try {
        result.dataset = make_concept_dataset(bits_for_items(n), std::move(ordered_labels),
                                              std::move(ordered_weights));
    } catch (const std::exception& e) {
        throw IoError("dataset '" + path + "': " + e.what());
    }
    return result;
}

ConceptDataset load_dataset(const std::string& path) {
    DatasetLoadResult result = load_dataset_file(path);
    if (result.renormalized) {
        std::fprintf(stderr, "warning: dataset '%s' weights sum to %.12g; renormalized\n",
                     path.c_str(), result.raw_weight_sum);
    }
    return std::move(result.dataset);
}

Partition partition(const ConceptDataset& ds) {
    Partition part;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.labels[i] == 0) {
            part.xi0 += ds.weights[i];
            part.members0.push_back(i);
        } else {
            part.xi1 += ds.weights[i];
            part.members1.push_back(i);
        }
    }
    return part;
}

StateVector dataset_superposition(const ConceptDataset& ds, SimMode mode) {
    if (mode == SimMode::kFull) {
        std::vector<Amplitude> amps(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) {
            amps[i] = Amplitude{std::sqrt(ds.weights[i]), 0.0};
        }
        return StateVector({ds.size()}, std::move(amps));
    }
    const Partition part = partition(ds);
    return StateVector({2}, {Amplitude{std::sqrt(part.xi0), 0.0},
                             Amplitude{std::sqrt(part.xi1), 0.0}});
}

StateVector qram_init(const ConceptDataset& ds, QramCounter& counter, SimMode mode) {
    ++counter.queries;
    return dataset_superposition(ds, mode);
}

StateVector class_state(const ConceptDataset& ds, const Partition& part, int tau, SimMode mode) {
    if (tau != 0 && tau != 1) {
        throw DimensionError("class index must be 0 or 1");
    }
    const auto& members = (tau == 0) ? part.members0 : part.members1;
    if (members.empty()) {
        throw InvalidStateError("class has no members; class state undefined");
    }
    if (mode == SimMode::kReduced) {
        return StateVector::basis({2}, static_cast<std::size_t>(tau));
    }
    const double xi = (tau == 0) ? part.xi0 : part.xi1;
    std::vector<Amplitude> amps(ds.size(), Amplitude{0.0, 0.0});
    if (xi > 0.0) {
        for (const std::size_t i : members) {
            amps[i] = Amplitude{std::sqrt(ds.weights[i] / xi), 0.0};
        }
    } else {
        const double a = 1.0 / std::sqrt(static_cast<double>(members.size()));
        for (const std::size_t i : members) {
            amps[i] = Amplitude{a, 0.0};
        }
    }
    return StateVector({ds.size()}, std::move(amps));
}

}  // namespace qreuse
