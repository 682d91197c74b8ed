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

#ifndef PQEC_FLOWS_H
#define PQEC_FLOWS_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pqec/circuit.h"
#include "pqec/pauli.h"

namespace pqec {

/// "input -> output, times the parity of `measurements`" preserved by a circuit.
struct StabilizerFlow {
    PauliString input;
    PauliString output;
    /// Absolute (unrolled) measurement indices.
    std::vector<uint32_t> measurements;
};

struct FlowCheck {
    bool ok = false;
    std::string failure;
    /// Index of the first measurement after which the input can no longer be carried forward.
    std::optional<size_t> failing_measurement;
};

/// Checks a flow exactly: the circuit acts on one half of a register of Bell pairs, and the flow
/// holds iff output (x) transpose(input) ends up in the stabilizer group with sign equal to the
/// measurement parity, as an identity between affine functions of the random outcomes.
FlowCheck verify_flow(const Circuit &circuit, const StabilizerFlow &flow);

struct FlowSolution {
    std::vector<uint32_t> measurements;
    /// True when the flow carries an extra -1 (input -> -output).
    bool negated = false;
};

/// Searches the span of measurement outcomes for a set that makes input -> output hold.
std::optional<FlowSolution> find_flow_measurements(const Circuit &circuit, const PauliString &input,
                                                   const PauliString &output);

/// The five-pair-measurement four-body parity gadget on qubits data[0..3], ancillas[0..1].
/// Basis X: RZ ancillas; MXX(a,m1) MXX(d,m2) MZZ(m1,m2) MXX(b,m1) MXX(c,m2); MZ ancillas.
/// Basis Z is the same with X and Z exchanged.
Circuit parity_gadget(char basis, const std::array<uint32_t, 4> &data, const std::array<uint32_t, 2> &ancillas);

struct GadgetFlowResult {
    std::string name;
    StabilizerFlow flow;
    FlowCheck check;
};

struct GadgetReport {
    std::vector<GadgetFlowResult> x_gadget;
    std::vector<GadgetFlowResult> z_gadget;

    size_t num_passed() const;
    size_t num_total() const {
        return x_gadget.size() + z_gadget.size();
    }
    bool all_passed() const {
        return num_passed() == num_total();
    }
};

/// Verifies the eight stabilizer generators of a four-body parity measurement on `gadget`
/// (a six-qubit circuit with data 0..3), in the given basis.
std::vector<GadgetFlowResult> verify_gadget_flows(const Circuit &gadget, char basis);

/// Runs verify_gadget_flows on the X gadget and on the Z gadget.
GadgetReport verify_parity_gadget();

}  // namespace pqec

#endif
