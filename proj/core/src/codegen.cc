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

#include "pqec/codegen.h"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include "pqec/flows.h"
#include "pqec/gf2.h"

namespace pqec {

Circuit gadget_schedule(const Plaquette &plaquette) {
    if (!plaquette.is_bulk()) {
        throw std::invalid_argument("gadget_schedule needs a weight-4 plaquette");
    }
    return parity_gadget(plaquette.basis, {plaquette.data[0], plaquette.data[1], plaquette.data[2], plaquette.data[3]},
                         plaquette.ancillas);
}

std::optional<std::vector<uint32_t>> minimal_completion(const std::vector<AffineExpr> &outcomes,
                                                        const std::vector<uint32_t> &target,
                                                        const std::vector<uint32_t> &candidates) {
    size_t n = candidates.size();
    Gf2Eliminator elim;
    std::vector<BitVec> dependencies;
    for (size_t k = 0; k < n; k++) {
        BitVec v = outcomes[candidates[k]].vars;
        BitVec combo(n);
        combo.set(k, true);
        if (!elim.insert(v, combo)) {
            dependencies.push_back(std::move(combo));
        }
    }
    BitVec t;
    for (uint32_t m : target) {
        t ^= outcomes[m].vars;
    }
    BitVec best(n);
    if (!elim.reduce(t, best)) {
        return std::nullopt;
    }

    auto to_list = [&](const BitVec &combo) {
        std::vector<uint32_t> out;
        combo.for_each_one([&](size_t k) { out.push_back(candidates[k]); });
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<uint32_t> best_list = to_list(best);
    auto consider = [&](const BitVec &combo) {
        size_t w = combo.popcount();
        if (w > best_list.size()) {
            return false;
        }
        std::vector<uint32_t> list = to_list(combo);
        if (w < best_list.size() || list < best_list) {
            best_list = std::move(list);
            best = combo;
            return true;
        }
        return false;
    };
    if (dependencies.size() <= 16) {
        // Gray-code walk over the whole coset.
        BitVec cur = best;
        for (uint64_t i = 1; i < (uint64_t{1} << dependencies.size()); i++) {
            cur ^= dependencies[std::countr_zero(i)];
            consider(cur);
        }
    } else {
        bool improved = true;
        while (improved) {
            improved = false;
            for (const BitVec &dep : dependencies) {
                BitVec cur = best ^ dep;
                if (cur.popcount() < best.popcount()) {
                    best = cur;
                    best_list = to_list(best);
                    improved = true;
                }
            }
        }
    }
    return best_list;
}

namespace {

constexpr size_t NUM_GADGET_ROLES = 7;

/// Per-layer operations, in emission order.
struct LayerBuilder {
    std::vector<uint32_t> rz, rx;
    std::vector<uint32_t> mxx, mzz, mx, mz;  // flattened targets
    std::vector<MeasurementTag> mxx_tags, mzz_tags, mx_tags, mz_tags;

    void pair(char basis, uint32_t a, uint32_t b, MeasurementTag tag) {
        auto &targets = basis == 'X' ? mxx : mzz;
        auto &tags = basis == 'X' ? mxx_tags : mzz_tags;
        targets.push_back(a);
        targets.push_back(b);
        tags.push_back(tag);
    }
    void single(char basis, uint32_t q, MeasurementTag tag) {
        (basis == 'X' ? mx : mz).push_back(q);
        (basis == 'X' ? mx_tags : mz_tags).push_back(tag);
    }
    void reset(char basis, uint32_t q) {
        (basis == 'X' ? rx : rz).push_back(q);
    }

    std::vector<Instruction> instructions(std::vector<MeasurementTag> &tags_out) const {
        std::vector<Instruction> out;
        auto emit = [&](Gate g, const std::vector<uint32_t> &qs, const std::vector<MeasurementTag> *tags) {
            if (qs.empty()) {
                return;
            }
            Instruction inst;
            inst.gate = g;
            for (uint32_t q : qs) {
                inst.targets.push_back(Target::qubit(q));
            }
            out.push_back(std::move(inst));
            if (tags) {
                tags_out.insert(tags_out.end(), tags->begin(), tags->end());
            }
        };
        emit(Gate::RZ, rz, nullptr);
        emit(Gate::RX, rx, nullptr);
        emit(Gate::MXX, mxx, &mxx_tags);
        emit(Gate::MZZ, mzz, &mzz_tags);
        emit(Gate::MX, mx, &mx_tags);
        emit(Gate::MZ, mz, &mz_tags);
        return out;
    }
};

struct Annotation {
    bool is_detector;
    std::vector<uint32_t> measurements;
    std::vector<double> coords;
};

bool shares_data(const Plaquette &a, const Plaquette &b) {
    for (uint32_t q : a.data) {
        if (std::find(b.data.begin(), b.data.end(), q) != b.data.end()) {
            return true;
        }
    }
    return false;
}

}  // namespace

MemoryExperiment build_memory_experiment(int d, int rounds, char basis) {
    if (basis != 'X' && basis != 'Z') {
        throw std::invalid_argument("basis must be X or Z");
    }
    if (rounds < 1) {
        throw std::invalid_argument("rounds must be at least 1");
    }
    MemoryExperiment exp;
    exp.layout = generate_layout(d);
    exp.basis = basis;
    exp.rounds = rounds;
    const Layout &layout = exp.layout;
    const auto &plaquettes = layout.plaquettes;

    size_t num_layers = (size_t)ROUND_LAYERS * rounds + 2;
    std::vector<LayerBuilder> builders(num_layers);
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        builders[0].reset(basis, q);
    }
    for (int r = 0; r < rounds; r++) {
        for (size_t p = 0; p < plaquettes.size(); p++) {
            const Plaquette &pl = plaquettes[p];
            char other = pl.basis == 'X' ? 'Z' : 'X';
            uint32_t base = ROUND_LAYERS * r + (pl.basis == 'X' ? 0 : 3);
            auto tag = [&](MeasurementRole role, uint32_t layer) {
                return MeasurementTag{(int)p, r, role, layer, 0};
            };
            if (!pl.is_bulk()) {
                builders[base + 2].pair(pl.basis, pl.data[0], pl.data[1], tag(MeasurementRole::PAIR, base + 2));
                continue;
            }
            auto [m1, m2] = pl.ancillas;
            builders[base].reset(other, m1);
            builders[base].reset(other, m2);
            builders[base + 1].pair(pl.basis, pl.data[0], m1, tag(MeasurementRole::LIMB_A, base + 1));
            builders[base + 1].pair(pl.basis, pl.data[3], m2, tag(MeasurementRole::LIMB_D, base + 1));
            builders[base + 2].pair(other, m1, m2, tag(MeasurementRole::CORE, base + 2));
            builders[base + 3].pair(pl.basis, pl.data[1], m1, tag(MeasurementRole::LIMB_B, base + 3));
            builders[base + 3].pair(pl.basis, pl.data[2], m2, tag(MeasurementRole::LIMB_C, base + 3));
            builders[base + 4].single(other, m1, tag(MeasurementRole::SINGLE_1, base + 4));
            builders[base + 4].single(other, m2, tag(MeasurementRole::SINGLE_2, base + 4));
        }
    }
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        builders[num_layers - 1].single(basis, q,
                                        MeasurementTag{-1, rounds, MeasurementRole::DATA, (uint32_t)num_layers - 1, q});
    }

    std::vector<size_t> layer_measure_end;
    for (const auto &b : builders) {
        exp.layers.push_back(b.instructions(exp.measurements));
        layer_measure_end.push_back(exp.measurements.size());
    }

    // Index lookups.
    std::vector<std::vector<std::array<int64_t, NUM_GADGET_ROLES + 1>>> index(
        plaquettes.size(), std::vector<std::array<int64_t, NUM_GADGET_ROLES + 1>>(rounds));
    for (auto &per_round : index) {
        for (auto &a : per_round) {
            a.fill(-1);
        }
    }
    std::vector<uint32_t> data_index(layout.num_data());
    for (uint32_t m = 0; m < exp.measurements.size(); m++) {
        const MeasurementTag &t = exp.measurements[m];
        if (t.role == MeasurementRole::DATA) {
            data_index[t.qubit] = m;
        } else {
            index[t.plaquette][t.round][(size_t)t.role] = m;
        }
    }
    auto at = [&](size_t p, int r, MeasurementRole role) { return (uint32_t)index[p][r][(size_t)role]; };
    auto anchors = [&](size_t p, int r) {
        if (!plaquettes[p].is_bulk()) {
            return std::vector<uint32_t>{at(p, r, MeasurementRole::PAIR)};
        }
        return std::vector<uint32_t>{at(p, r, MeasurementRole::LIMB_A), at(p, r, MeasurementRole::LIMB_D),
                                     at(p, r, MeasurementRole::LIMB_B), at(p, r, MeasurementRole::LIMB_C)};
    };
    std::vector<std::vector<size_t>> opposite_neighbors(plaquettes.size());
    for (size_t p = 0; p < plaquettes.size(); p++) {
        for (size_t q = 0; q < plaquettes.size(); q++) {
            if (plaquettes[q].basis != plaquettes[p].basis && plaquettes[q].is_bulk() &&
                shares_data(plaquettes[p], plaquettes[q])) {
                opposite_neighbors[p].push_back(q);
            }
        }
    }
    auto internal = [&](size_t q, int r, std::vector<uint32_t> &out) {
        out.push_back(at(q, r, MeasurementRole::CORE));
        out.push_back(at(q, r, MeasurementRole::SINGLE_1));
        out.push_back(at(q, r, MeasurementRole::SINGLE_2));
    };
    auto candidates = [&](size_t p, int r) {
        std::vector<uint32_t> out;
        for (size_t q : opposite_neighbors[p]) {
            internal(q, r, out);
        }
        return out;
    };

    Circuit ops_only;
    for (const auto &layer : exp.layers) {
        for (const auto &inst : layer) {
            ops_only.instructions.push_back(inst);
        }
    }
    MeasurementAnalysis analysis = analyze_measurements(ops_only);

    auto add_detector = [&](size_t p, int round, std::vector<uint32_t> target, const std::vector<uint32_t> &cands) {
        auto completion = minimal_completion(analysis.outcomes, target, cands);
        if (!completion.has_value()) {
            throw std::logic_error("no deterministic completion for plaquette " + std::to_string(p) + " round " +
                                   std::to_string(round));
        }
        target.insert(target.end(), completion->begin(), completion->end());
        std::sort(target.begin(), target.end());
        auto [cx, cy] = plaquettes[p].center();
        exp.detectors.push_back(DetectorSpec{target, (int)p, round, {cx, cy, (double)round}});
    };
    for (int r = 0; r <= rounds; r++) {
        for (size_t p = 0; p < plaquettes.size(); p++) {
            char b = plaquettes[p].basis;
            if (r == 0) {
                if (b == basis) {
                    add_detector(p, 0, anchors(p, 0), b == 'Z' ? candidates(p, 0) : std::vector<uint32_t>{});
                }
            } else if (r < rounds) {
                std::vector<uint32_t> target = anchors(p, r - 1);
                std::vector<uint32_t> later = anchors(p, r);
                target.insert(target.end(), later.begin(), later.end());
                add_detector(p, r, target, candidates(p, b == 'X' ? r - 1 : r));
            } else if (b == basis) {
                std::vector<uint32_t> target = anchors(p, rounds - 1);
                for (uint32_t q : plaquettes[p].data) {
                    target.push_back(data_index[q]);
                }
                add_detector(p, rounds, target, b == 'X' ? candidates(p, rounds - 1) : std::vector<uint32_t>{});
            }
        }
    }
    // Emission order: by the layer that completes each detector, then by creation.
    std::stable_sort(exp.detectors.begin(), exp.detectors.end(), [&](const DetectorSpec &a, const DetectorSpec &b) {
        return exp.measurements[a.measurements.back()].layer < exp.measurements[b.measurements.back()].layer;
    });

    {
        std::vector<uint32_t> target;
        Plaquette support;
        for (int k = 0; k < d; k++) {
            uint32_t q = basis == 'X' ? layout.data_qubit(0, k) : layout.data_qubit(k, 0);
            target.push_back(data_index[q]);
            support.data.push_back(q);
        }
        std::vector<uint32_t> cands;
        for (int r = 0; r < rounds; r++) {
            for (size_t q = 0; q < plaquettes.size(); q++) {
                if (plaquettes[q].basis != basis && plaquettes[q].is_bulk() && shares_data(support, plaquettes[q])) {
                    internal(q, r, cands);
                }
            }
        }
        auto completion = minimal_completion(analysis.outcomes, target, cands);
        if (!completion.has_value()) {
            throw std::logic_error("logical observable has no deterministic completion");
        }
        target.insert(target.end(), completion->begin(), completion->end());
        std::sort(target.begin(), target.end());
        exp.observable = target;
    }

    // Annotations attached to the layer that completes them.
    std::vector<std::vector<Annotation>> layer_annotations(num_layers);
    for (const auto &det : exp.detectors) {
        uint32_t layer = exp.measurements[det.measurements.back()].layer;
        layer_annotations[layer].push_back({true, det.measurements, {det.coords[0], det.coords[1]}});
    }
    {
        std::map<uint32_t, std::vector<uint32_t>> by_layer;
        for (uint32_t m : exp.observable) {
            by_layer[exp.measurements[m].layer].push_back(m);
        }
        for (auto &[layer, ms] : by_layer) {
            layer_annotations[layer].push_back({false, ms, {0}});
        }
    }

    auto emit_range = [&](size_t begin, size_t end) {
        Circuit c;
        for (size_t layer = begin; layer < end; layer++) {
            for (const auto &inst : exp.layers[layer]) {
                c.instructions.push_back(inst);
            }
            size_t count = layer_measure_end[layer];
            for (const auto &ann : layer_annotations[layer]) {
                std::vector<uint32_t> lookbacks;
                for (auto it = ann.measurements.rbegin(); it != ann.measurements.rend(); ++it) {
                    lookbacks.push_back((uint32_t)(count - *it));
                }
                c.append_records(ann.is_detector ? Gate::DETECTOR : Gate::OBSERVABLE_INCLUDE, lookbacks, ann.coords);
            }
            if (layer + 1 < num_layers) {
                c.append_tick();
            }
        }
        return c;
    };

    Circuit circuit;
    for (uint32_t q = 0; q < layout.num_qubits; q++) {
        Instruction inst;
        inst.gate = Gate::QUBIT_COORDS;
        inst.args = {layout.coords[q].first, layout.coords[q].second};
        inst.targets = {Target::qubit(q)};
        circuit.instructions.push_back(std::move(inst));
    }
    exp.compressed = false;
    // Round 1 still sees the missing round before round 0 in its lookbacks, so the periodic part
    // starts at round 2.
    if (rounds >= 4) {
        size_t prefix_end = 2 * ROUND_LAYERS + 2;
        Circuit body = emit_range(prefix_end, prefix_end + ROUND_LAYERS);
        bool periodic = true;
        for (int r = 3; r <= rounds - 2 && periodic; r++) {
            size_t begin = (size_t)ROUND_LAYERS * r + 2;
            periodic = emit_range(begin, begin + ROUND_LAYERS) == body;
        }
        if (periodic) {
            size_t suffix_begin = (size_t)ROUND_LAYERS * (rounds - 1) + 2;
            circuit.append_circuit(emit_range(0, prefix_end));
            circuit.append_repeat(rounds - 3, body);
            circuit.append_circuit(emit_range(suffix_begin, num_layers));
            exp.compressed = true;
        }
    }
    if (!exp.compressed) {
        circuit.append_circuit(emit_range(0, num_layers));
    }
    exp.circuit = std::move(circuit);
    return exp;
}

Circuit generate_memory_circuit(int d, int rounds, char basis, const std::string &construction) {
    if (construction != "pentagon") {
        throw std::invalid_argument("unknown construction '" + construction + "'");
    }
    return build_memory_experiment(d, rounds, basis).circuit;
}

Circuit strip_annotations(const Circuit &circuit) {
    Circuit out;
    for (const auto &inst : circuit.instructions) {
        if (inst.gate == Gate::DETECTOR || inst.gate == Gate::OBSERVABLE_INCLUDE) {
            continue;
        }
        if (inst.gate == Gate::REPEAT) {
            out.append_repeat(inst.repeat_count, strip_annotations(circuit.blocks[inst.block]));
            continue;
        }
        out.instructions.push_back(inst);
    }
    return out;
}

InferredDetectors infer_detectors(const Circuit &circuit, const InferenceOptions &options) {
    Circuit flat = strip_annotations(unroll(circuit));
    MeasurementAnalysis analysis = analyze_measurements(flat);
    size_t num_m = analysis.outcomes.size();
    if (num_m == 0) {
        throw std::runtime_error("circuit has no measurements");
    }
    size_t n = flat.num_qubits();

    // Per-measurement layer and qubits, plus the interaction graph.
    std::vector<uint32_t> layer_of;
    std::vector<std::vector<uint32_t>> qubits_of;
    std::vector<std::vector<uint32_t>> adj(n);
    std::vector<size_t> instruction_end;  // measurement count after each instruction
    uint32_t layer = 0;
    for (const auto &inst : flat.instructions) {
        if (inst.gate == Gate::TICK) {
            layer++;
        }
        const GateInfo &info = gate_info(inst.gate);
        if (info.is_measurement) {
            for (const auto &terms : measured_products(inst)) {
                layer_of.push_back(layer);
                std::vector<uint32_t> qs;
                for (const auto &t : terms) {
                    qs.push_back(t.qubit);
                }
                if (qs.size() == 2) {
                    adj[qs[0]].push_back(qs[1]);
                    adj[qs[1]].push_back(qs[0]);
                }
                qubits_of.push_back(std::move(qs));
            }
        }
        instruction_end.push_back(layer_of.size());
    }
    for (auto &a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }

    std::vector<std::pair<int, int>> windows;
    for (int radius = 1; radius <= options.max_radius; radius++) {
        for (int layers : {ROUND_LAYERS, ROUND_LAYERS + 2}) {
            windows.push_back({radius, std::min(layers, options.max_layers)});
        }
    }

    InferredDetectors result;
    std::vector<std::vector<std::vector<uint32_t>>> ending_at(num_m);
    Gf2Eliminator global;
    for (uint32_t m = 0; m < num_m; m++) {
        BitVec v = analysis.outcomes[m].vars;
        BitVec combo;
        if (global.insert(v, combo)) {
            continue;
        }
        // Hop distances from this measurement's qubits.
        std::vector<int> dist(n, -1);
        std::queue<uint32_t> queue;
        for (uint32_t q : qubits_of[m]) {
            dist[q] = 0;
            queue.push(q);
        }
        while (!queue.empty()) {
            uint32_t q = queue.front();
            queue.pop();
            if (dist[q] >= options.max_radius) {
                continue;
            }
            for (uint32_t w : adj[q]) {
                if (dist[w] < 0) {
                    dist[w] = dist[q] + 1;
                    queue.push(w);
                }
            }
        }
        std::optional<std::vector<uint32_t>> found;
        for (auto [radius, layers] : windows) {
            std::vector<uint32_t> window;
            for (uint32_t k = m; k-- > 0;) {
                if ((int)layer_of[m] - (int)layer_of[k] > layers) {
                    break;
                }
                bool near = false;
                for (uint32_t q : qubits_of[k]) {
                    near |= dist[q] >= 0 && dist[q] <= radius;
                }
                if (near) {
                    window.push_back(k);
                }
            }
            std::reverse(window.begin(), window.end());
            found = minimal_completion(analysis.outcomes, {m}, window);
            if (found.has_value()) {
                break;
            }
        }
        if (!found.has_value()) {
            result.nonlocal_ends.push_back(m);
            continue;
        }
        found->push_back(m);
        std::sort(found->begin(), found->end());
        ending_at[m].push_back(*found);
        result.detectors.push_back(*found);
    }

    size_t inst_index = 0;
    size_t emitted = 0;
    for (const auto &inst : flat.instructions) {
        result.circuit.instructions.push_back(inst);
        size_t count = instruction_end[inst_index++];
        for (; emitted < count; emitted++) {
            for (const auto &det : ending_at[emitted]) {
                std::vector<uint32_t> lookbacks;
                for (auto it = det.rbegin(); it != det.rend(); ++it) {
                    lookbacks.push_back((uint32_t)(count - *it));
                }
                result.circuit.append_records(Gate::DETECTOR, lookbacks);
            }
        }
    }
    return result;
}

}  // namespace pqec
