// Copyright 2026 The pqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQEC_DEM_H
#define PQEC_DEM_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pqec/circuit.h"

namespace pqec {

/// Detectors and observables flipped together.
struct Symptom {
    std::vector<uint32_t> detectors;  // sorted
    uint64_t observables = 0;

    bool empty() const {
        return detectors.empty() && observables == 0;
    }
    Symptom &operator^=(const Symptom &other);
    bool operator==(const Symptom &other) const = default;
    auto operator<=>(const Symptom &other) const = default;
};

/// An independent error mechanism of a detector error model.
struct ErrorMechanism {
    double probability = 0;
    Symptom symptom;
    /// Graphlike pieces (at most two detectors each) whose XOR is the symptom; empty when the
    /// mechanism was not decomposed.
    std::vector<Symptom> components;
    /// Human-readable origin of the first circuit fault that produced it.
    std::string source;
};

struct DetectorErrorModel {
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<ErrorMechanism> mechanisms;
};

/// Probability that exactly one of two independent events with probabilities a and b happens.
double merge_probability(double a, double b);

/// First-order error model: every Pauli term of every noise channel and every measurement flip is
/// propagated alone, and terms with identical symptoms are merged. A DEP1(p) term has probability
/// p/3, a DEP2(p) term p/15. Throws std::runtime_error when some fault has a symptom that depends
/// on measurement randomness (the circuit's detectors are then not deterministic).
DetectorErrorModel extract_error_model(const Circuit &noisy_circuit);

/// Text format, one mechanism per line: "error(p) D3 D7 L0", with " ^ " between components when
/// the mechanism is decomposed. Header lines "detectors N" and "observables K"; '#' comments.
std::string dem_to_text(const DetectorErrorModel &dem);
DetectorErrorModel parse_dem(std::string_view text);

}  // namespace pqec

#endif
