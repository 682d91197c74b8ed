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

#ifndef PQEC_CIRCUIT_H
#define PQEC_CIRCUIT_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pqec {

/// The instruction set. Only pair measurements entangle; there are no unitary gates.
enum class Gate : uint8_t {
    RX,
    RY,
    RZ,
    MX,
    MY,
    MZ,
    MXX,
    MYY,
    MZZ,
    TICK,
    DEP1,
    DEP2,
    XERR,
    ZERR,
    DETECTOR,
    OBSERVABLE_INCLUDE,
    QUBIT_COORDS,
    REPEAT,
};

struct GateInfo {
    std::string_view name;
    bool is_reset;
    bool is_measurement;
    bool is_pair;
    bool is_noise;
    bool is_annotation;
};

const GateInfo &gate_info(Gate gate);
Gate gate_from_name(std::string_view name);

/// Single-qubit Pauli basis of a reset or measurement ('X', 'Y' or 'Z').
char gate_basis(Gate gate);

/// A qubit index, or a measurement record back-reference `rec[-lookback]`.
struct Target {
    uint32_t value = 0;
    bool is_record = false;

    static Target qubit(uint32_t q) {
        return Target{q, false};
    }
    static Target rec(uint32_t lookback) {
        return Target{lookback, true};
    }
    bool operator==(const Target &other) const = default;
};

struct Instruction {
    Gate gate = Gate::TICK;
    /// Noise probabilities, measurement flip probability, coordinates or observable index.
    std::vector<double> args;
    std::vector<Target> targets;
    /// REPEAT only: iteration count and index into Circuit::blocks.
    uint64_t repeat_count = 0;
    uint32_t block = 0;

    bool operator==(const Instruction &other) const = default;
};

/// An ordered instruction list with nested REPEAT blocks.
///
/// Measurement results form a record; DETECTOR and OBSERVABLE_INCLUDE refer back into it with
/// negative offsets, so a REPEAT body addresses its own iteration's results uniformly.
struct Circuit {
    std::vector<Instruction> instructions;
    std::vector<Circuit> blocks;

    bool operator==(const Circuit &other) const;
    bool operator!=(const Circuit &other) const {
        return !(*this == other);
    }

    /// 1 + the largest qubit index used (0 for a circuit without qubits).
    size_t num_qubits() const;
    size_t num_measurements() const;
    size_t num_detectors() const;
    size_t num_observables() const;
    size_t num_ticks() const;
    bool has_noise() const;

    /// Appends a gate; pair gates take their targets as consecutive pairs.
    void append(Gate gate, const std::vector<uint32_t> &qubits, const std::vector<double> &args = {});
    void append_records(Gate gate, const std::vector<uint32_t> &lookbacks, const std::vector<double> &args = {});
    void append_tick();
    void append_repeat(uint64_t count, Circuit body);
    /// Appends every instruction of `other`, copying its blocks.
    void append_circuit(const Circuit &other);
};

struct Diagnostic {
    /// Instruction index; nested blocks are written "outer/inner".
    std::string location;
    std::string rule;
};

/// Checks the structural invariants. An empty result means the circuit is valid.
std::vector<Diagnostic> validate(const Circuit &circuit);

/// Inlines every REPEAT block. Throws std::invalid_argument on a circuit that does not validate.
Circuit unroll(const Circuit &circuit);

class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, size_t column, const std::string &message);
    size_t line;
    size_t column;
};

Circuit parse_text(std::string_view text);
std::string serialize_text(const Circuit &circuit);

/// Detector and observable definitions resolved to absolute measurement indices (XOR-normalized,
/// sorted), in unrolled order.
struct ResolvedAnnotations {
    std::vector<std::vector<uint32_t>> detectors;
    std::vector<std::vector<uint32_t>> observables;
    std::vector<std::vector<double>> detector_coords;
    size_t num_measurements = 0;
};

ResolvedAnnotations resolve_annotations(const Circuit &circuit);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace pqec

#endif
