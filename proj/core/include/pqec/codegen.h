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

#ifndef PQEC_CODEGEN_H
#define PQEC_CODEGEN_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pqec/circuit.h"
#include "pqec/layout.h"
#include "pqec/tableau.h"

namespace pqec {

/// Layers per steady-state round.
constexpr int ROUND_LAYERS = 6;

/// Instruction list measuring one weight-4 plaquette with five pair measurements.
/// Throws std::invalid_argument for a weight-2 plaquette.
Circuit gadget_schedule(const Plaquette &plaquette);

/// What produced a measurement of a memory circuit.
enum class MeasurementRole : uint8_t {
    LIMB_A,    // limb one, data a with m1
    LIMB_D,    // limb one, data d with m2
    CORE,      // m1 with m2
    LIMB_B,    // limb two, data b with m1
    LIMB_C,    // limb two, data c with m2
    SINGLE_1,  // m1 readout
    SINGLE_2,  // m2 readout
    PAIR,      // weight-2 plaquette
    DATA,      // final data readout
};

struct MeasurementTag {
    int plaquette = -1;  // index into Layout::plaquettes, -1 for data readout
    int round = 0;
    MeasurementRole role = MeasurementRole::DATA;
    uint32_t layer = 0;
    uint32_t qubit = 0;  // data readout only
};

struct DetectorSpec {
    std::vector<uint32_t> measurements;  // absolute indices, sorted
    int plaquette = -1;
    /// Round of the later comparison; `rounds` for the final data comparison.
    int round = 0;
    std::array<double, 3> coords{};
};

/// A memory experiment with all of its bookkeeping.
struct MemoryExperiment {
    Layout layout;
    char basis = 'X';
    int rounds = 0;
    /// Noiseless operations of every layer, unrolled.
    std::vector<std::vector<Instruction>> layers;
    std::vector<MeasurementTag> measurements;
    std::vector<DetectorSpec> detectors;
    std::vector<uint32_t> observable;
    /// Whether the steady-state rounds were emitted as a REPEAT block.
    bool compressed = false;
    /// The annotated circuit.
    Circuit circuit;
};

/// Builds the memory experiment. Throws std::invalid_argument on bad parameters.
MemoryExperiment build_memory_experiment(int d, int rounds, char basis);

/// The annotated memory circuit for the pentagon construction.
Circuit generate_memory_circuit(int d, int rounds, char basis, const std::string &construction = "pentagon");

/// The circuit with DETECTOR and OBSERVABLE_INCLUDE annotations removed (REPEAT blocks kept).
Circuit strip_annotations(const Circuit &circuit);

struct InferenceOptions {
    /// Limits of the local search window, in interaction-graph hops and TICK layers.
    int max_radius = 4;
    int max_layers = ROUND_LAYERS + 2;
};

struct InferredDetectors {
    /// Annotated, unrolled circuit.
    Circuit circuit;
    std::vector<std::vector<uint32_t>> detectors;
    /// Last measurement of each deterministic parity that has no local representative
    /// (these are logical observables, not detectors).
    std::vector<uint32_t> nonlocal_ends;
};

/// Finds a minimal local deterministic parity ending at each measurement whose outcome is fixed by
/// earlier ones. Throws std::runtime_error when the circuit has no stabilizer structure to work with.
InferredDetectors infer_detectors(const Circuit &circuit, const InferenceOptions &options = {});

/// Smallest subset of the candidates whose parity, XORed with the target parity, is deterministic;
/// ties go to the lexicographically smallest index list. Empty optional when no subset works.
std::optional<std::vector<uint32_t>> minimal_completion(const std::vector<AffineExpr> &outcomes,
                                                        const std::vector<uint32_t> &target,
                                                        const std::vector<uint32_t> &candidates);

}  // namespace pqec

#endif
