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

#include "pqec/flows.h"

#include <algorithm>

#include "pqec/gf2.h"
#include "pqec/tableau.h"

namespace pqec {

namespace {

PauliString padded(const PauliString &p, size_t n) {
    PauliString r = p;
    if (r.num_qubits() < n) {
        r.xs.resize(n);
        r.zs.resize(n);
    }
    return r;
}

/// Unsigned output (x) input on the doubled register, plus the sign bit that the flow's own signs
/// and the transpose contribute.
std::pair<PauliString, bool> choi_target(const PauliString &input, const PauliString &output, size_t n) {
    PauliString q(2 * n);
    bool sign = input.sign ^ output.sign;
    for (size_t k = 0; k < n; k++) {
        q.set_letter(k, output.letter(k));
        char c = input.letter(k);
        q.set_letter(k + n, c);
        if (c == 'Y') {
            sign = !sign;
        }
    }
    return {q, sign};
}

struct BellRun {
    SymbolicTableau tableau;
    std::vector<AffineExpr> outcomes;
};

/// Runs the circuit on the first half of n Bell pairs. `after_op` is called after each
/// measurement or reset with the number of measurements so far.
template <typename F>
BellRun run_on_bell_pairs(const Circuit &circuit, size_t n, F &&after_op) {
    BellRun run{SymbolicTableau::bell_pairs(n), {}};
    Circuit flat = unroll(circuit);
    for (const Instruction &inst : flat.instructions) {
        const GateInfo &info = gate_info(inst.gate);
        if (info.is_reset) {
            for (const Target &t : inst.targets) {
                run.tableau.reset(t.value, gate_basis(inst.gate));
                if (!after_op(run)) {
                    return run;
                }
            }
        } else if (info.is_measurement) {
            for (const auto &terms : measured_products(inst)) {
                run.outcomes.push_back(run.tableau.measure(terms));
                if (!after_op(run)) {
                    return run;
                }
            }
        }
    }
    return run;
}

/// True when some stabilizer of the doubled register has reference half equal to `input`.
bool input_still_tracked(const SymbolicTableau &t, const PauliString &input, size_t n) {
    Gf2Eliminator elim;
    for (size_t k = 0; k < 2 * n; k++) {
        PauliString s = t.stabilizer(k);
        BitVec row(2 * n);
        for (size_t q = 0; q < n; q++) {
            row.set(q, s.xs[q + n]);
            row.set(q + n, s.zs[q + n]);
        }
        BitVec combo;
        elim.insert(row, combo);
    }
    BitVec target(2 * n);
    for (size_t q = 0; q < n; q++) {
        target.set(q, input.xs[q]);
        target.set(q + n, input.zs[q]);
    }
    BitVec combo;
    return elim.reduce(target, combo);
}

}  // namespace

FlowCheck verify_flow(const Circuit &circuit, const StabilizerFlow &flow) {
    size_t n = std::max({circuit.num_qubits(), flow.input.num_qubits(), flow.output.num_qubits()});
    PauliString input = padded(flow.input, n);
    PauliString output = padded(flow.output, n);
    BellRun run = run_on_bell_pairs(circuit, n, [](const BellRun &) { return true; });
    auto [target, sign] = choi_target(input, output, n);

    FlowCheck result;
    for (uint32_t m : flow.measurements) {
        if (m >= run.outcomes.size()) {
            result.failure = "measurement index " + std::to_string(m) + " out of range";
            return result;
        }
    }
    std::optional<AffineExpr> s = run.tableau.peek(target);
    if (!s.has_value()) {
        result.failure = "output is not a stabilizer flow of the input";
        size_t count = 0;
        run_on_bell_pairs(circuit, n, [&](const BellRun &partial) {
            if (!input_still_tracked(partial.tableau, input, n)) {
                result.failing_measurement = partial.outcomes.empty() ? 0 : partial.outcomes.size() - 1;
                return false;
            }
            count++;
            return true;
        });
        if (result.failing_measurement.has_value()) {
            result.failure += "; input anticommutes unrecoverably at measurement " +
                              std::to_string(*result.failing_measurement);
        }
        return result;
    }
    AffineExpr expected;
    std::vector<uint32_t> ms = flow.measurements;
    for (uint32_t m : ms) {
        expected ^= run.outcomes[m];
    }
    AffineExpr actual = *s;
    actual.constant ^= sign;
    if (!(actual.vars == expected.vars)) {
        result.failure = "measurement set does not match the flow's dependence on measurement outcomes";
        return result;
    }
    if (actual.constant != expected.constant) {
        result.failure = "flow holds only with the opposite sign";
        return result;
    }
    result.ok = true;
    return result;
}

std::optional<FlowSolution> find_flow_measurements(const Circuit &circuit, const PauliString &input,
                                                   const PauliString &output) {
    size_t n = std::max({circuit.num_qubits(), input.num_qubits(), output.num_qubits()});
    PauliString in = padded(input, n);
    PauliString out = padded(output, n);
    BellRun run = run_on_bell_pairs(circuit, n, [](const BellRun &) { return true; });
    auto [target, sign] = choi_target(in, out, n);
    std::optional<AffineExpr> s = run.tableau.peek(target);
    if (!s.has_value()) {
        return std::nullopt;
    }
    Gf2Eliminator elim;
    for (size_t m = 0; m < run.outcomes.size(); m++) {
        BitVec v = run.outcomes[m].vars;
        BitVec combo(run.outcomes.size());
        combo.set(m, true);
        elim.insert(v, combo);
    }
    BitVec residual = s->vars;
    BitVec combo(run.outcomes.size());
    if (!elim.reduce(residual, combo)) {
        return std::nullopt;
    }
    FlowSolution sol;
    bool constant = s->constant ^ sign;
    combo.for_each_one([&](size_t m) {
        sol.measurements.push_back((uint32_t)m);
        constant ^= run.outcomes[m].constant;
    });
    sol.negated = constant;
    return sol;
}

Circuit parity_gadget(char basis, const std::array<uint32_t, 4> &data, const std::array<uint32_t, 2> &ancillas) {
    bool x = basis == 'X';
    Gate reset = x ? Gate::RZ : Gate::RX;
    Gate limb = x ? Gate::MXX : Gate::MZZ;
    Gate core = x ? Gate::MZZ : Gate::MXX;
    Gate single = x ? Gate::MZ : Gate::MX;
    auto [a, b, c, d] = data;
    auto [m1, m2] = ancillas;
    Circuit g;
    g.append(reset, {m1});
    g.append(reset, {m2});
    g.append(limb, {a, m1});
    g.append(limb, {d, m2});
    g.append(core, {m1, m2});
    g.append(limb, {b, m1});
    g.append(limb, {c, m2});
    g.append(single, {m1});
    g.append(single, {m2});
    return g;
}

std::vector<GadgetFlowResult> verify_gadget_flows(const Circuit &gadget, char basis) {
    char other = basis == 'X' ? 'Z' : 'X';
    size_t n = gadget.num_qubits();
    std::vector<std::pair<std::string, std::pair<PauliString, PauliString>>> generators;
    for (uint32_t k = 0; k < 4; k++) {
        PauliString p = PauliString::product(n, basis, {k});
        std::string name = std::string(1, basis) + std::to_string(k + 1) + " -> " + basis + std::to_string(k + 1);
        generators.push_back({name, {p, p}});
    }
    for (uint32_t k = 0; k < 3; k++) {
        PauliString p = PauliString::product(n, other, {k, k + 1});
        std::string pair = std::string(1, other) + std::to_string(k + 1) + other + std::to_string(k + 2);
        generators.push_back({pair + " -> " + pair, {p, p}});
    }
    {
        PauliString p = PauliString::product(n, basis, {0, 1, 2, 3});
        std::string name;
        for (int k = 1; k <= 4; k++) {
            name += std::string(1, basis) + std::to_string(k);
        }
        generators.push_back({name + " -> 1", {p, PauliString(n)}});
    }

    std::vector<GadgetFlowResult> results;
    for (auto &[name, io] : generators) {
        GadgetFlowResult r;
        r.name = name;
        r.flow.input = io.first;
        r.flow.output = io.second;
        std::optional<FlowSolution> sol = find_flow_measurements(gadget, io.first, io.second);
        if (!sol.has_value()) {
            r.check.failure = "no measurement set makes the flow hold";
            r.check = verify_flow(gadget, r.flow);
            if (r.check.ok) {
                r.check.ok = false;
                r.check.failure = "no measurement set makes the flow hold";
            }
        } else if (sol->negated) {
            r.flow.measurements = sol->measurements;
            r.check.failure = "flow only holds with a negated output";
        } else {
            r.flow.measurements = sol->measurements;
            r.check = verify_flow(gadget, r.flow);
        }
        results.push_back(std::move(r));
    }
    return results;
}

size_t GadgetReport::num_passed() const {
    size_t n = 0;
    for (const auto &r : x_gadget) {
        n += r.check.ok;
    }
    for (const auto &r : z_gadget) {
        n += r.check.ok;
    }
    return n;
}

GadgetReport verify_parity_gadget() {
    GadgetReport report;
    report.x_gadget = verify_gadget_flows(parity_gadget('X', {0, 1, 2, 3}, {4, 5}), 'X');
    report.z_gadget = verify_gadget_flows(parity_gadget('Z', {0, 1, 2, 3}, {4, 5}), 'Z');
    return report;
}

}  // namespace pqec
