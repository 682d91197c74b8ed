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

#ifndef PQEC_TESTS_FAULT_UTIL_H
#define PQEC_TESTS_FAULT_UTIL_H

#include <optional>
#include <vector>

#include "pqec/codegen.h"
#include "pqec/dem.h"
#include "pqec/frame_sampler.h"

namespace pqec::testing {

/// Detectors and observables flipped by a circuit whose only noise is certain errors.
inline Symptom certain_symptom(const Circuit &circuit) {
    DetectionData data = FrameSampler(circuit).sample(1, 0);
    Symptom s;
    s.detectors = data.fired(0);
    s.observables = data.observable_mask(0);
    return s;
}

/// Unrolled copy of `flat` with `gate` (probability 1) on `qubits` appended to layer `layer`.
inline Circuit with_error_in_layer(const Circuit &flat, size_t layer, Gate gate, const std::vector<uint32_t> &qubits) {
    Circuit out;
    size_t current = 0;
    bool placed = false;
    for (const auto &inst : flat.instructions) {
        if (inst.gate == Gate::TICK) {
            if (current == layer) {
                out.append(gate, qubits, {1.0});
                placed = true;
            }
            current++;
        }
        out.instructions.push_back(inst);
    }
    if (!placed) {
        out.append(gate, qubits, {1.0});
    }
    return out;
}

/// Unrolled copy of `flat` where measurement `m` is certainly flipped, optionally followed by a
/// certain error `gate` on `qubits` right after it.
inline Circuit with_measurement_fault(const Circuit &flat, uint32_t m, bool flip, std::optional<Gate> gate = {},
                                      const std::vector<uint32_t> &qubits = {}) {
    Circuit out;
    uint32_t seen = 0;
    for (const auto &inst : flat.instructions) {
        const GateInfo &info = gate_info(inst.gate);
        if (!info.is_measurement) {
            out.instructions.push_back(inst);
            continue;
        }
        size_t width = info.is_pair ? 2 : 1;
        uint32_t count = (uint32_t)(inst.targets.size() / width);
        if (m < seen || m >= seen + count) {
            out.instructions.push_back(inst);
            seen += count;
            continue;
        }
        size_t k = (m - seen) * width;
        Instruction before = inst, mid = inst, after = inst;
        before.targets.assign(inst.targets.begin(), inst.targets.begin() + k);
        mid.targets.assign(inst.targets.begin() + k, inst.targets.begin() + k + width);
        after.targets.assign(inst.targets.begin() + k + width, inst.targets.end());
        if (flip) {
            mid.args = {1.0};
        }
        if (!before.targets.empty()) {
            out.instructions.push_back(before);
        }
        out.instructions.push_back(mid);
        if (gate) {
            out.append(*gate, qubits, {1.0});
        }
        if (!after.targets.empty()) {
            out.instructions.push_back(after);
        }
        seen += count;
    }
    return out;
}

/// Index of the measurement of `plaquette` with `role` in `round`.
inline uint32_t find_measurement(const MemoryExperiment &e, int plaquette, int round, MeasurementRole role) {
    for (uint32_t k = 0; k < e.measurements.size(); k++) {
        const auto &t = e.measurements[k];
        if (t.plaquette == plaquette && t.round == round && t.role == role) {
            return k;
        }
    }
    throw std::runtime_error("measurement not found");
}

/// A bulk plaquette of the given basis closest to the patch center.
inline int central_plaquette(const Layout &layout, char basis) {
    int best = -1;
    double best_dist = 1e9;
    double c = (layout.d - 1) / 2.0;
    for (size_t k = 0; k < layout.plaquettes.size(); k++) {
        const auto &p = layout.plaquettes[k];
        if (!p.is_bulk() || p.basis != basis) {
            continue;
        }
        auto [x, y] = p.center();
        double dist = (x - c) * (x - c) + (y - c) * (y - c);
        if (dist < best_dist) {
            best_dist = dist;
            best = (int)k;
        }
    }
    return best;
}

/// Whether certain data errors `gate` on `qubits`, placed in some layer, reproduce `target`.
inline bool some_layer_matches(const Circuit &flat, Gate gate, const std::vector<uint32_t> &qubits,
                               const Symptom &target) {
    size_t layers = flat.num_ticks() + 1;
    for (size_t t = 0; t < layers; t++) {
        if (certain_symptom(with_error_in_layer(flat, t, gate, qubits)) == target) {
            return true;
        }
    }
    return false;
}

}  // namespace pqec::testing

#endif
