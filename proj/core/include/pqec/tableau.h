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

#ifndef PQEC_TABLEAU_H
#define PQEC_TABLEAU_H

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pqec/bit_vec.h"
#include "pqec/circuit.h"
#include "pqec/pauli.h"

namespace pqec {

/// An affine GF(2) function of the random measurement variables: constant ^ XOR(vars).
struct AffineExpr {
    BitVec vars;
    bool constant = false;

    bool is_constant() const {
        return vars.none();
    }
    AffineExpr &operator^=(const AffineExpr &other) {
        vars ^= other.vars;
        constant ^= other.constant;
        return *this;
    }
    bool operator==(const AffineExpr &other) const {
        return constant == other.constant && vars == other.vars;
    }
};

/// One term of a sparse Pauli product.
struct PauliTerm {
    uint32_t qubit;
    char pauli;
};

/// Aaronson-Gottesman stabilizer tableau whose stabilizer signs are affine functions of the
/// outcomes of earlier random measurements instead of concrete bits.
///
/// Every random measurement introduces a fresh variable. The outcome of any later measurement is
/// then an affine expression over those variables, which is exactly the information needed to
/// decide whether a parity of measurements is deterministic and what value it takes.
class SymbolicTableau {
   public:
    /// The all-|0> state.
    explicit SymbolicTableau(size_t num_qubits);

    /// 2n qubits where qubit k and qubit k + n form the Bell pair |00> + |11>.
    static SymbolicTableau bell_pairs(size_t n);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_variables() const {
        return num_vars_;
    }

    /// Measures the (unsigned) Pauli product. The result bit is 1 for the -1 eigenvalue.
    AffineExpr measure(std::span<const PauliTerm> terms);
    AffineExpr measure(const PauliString &p);

    /// Resets the qubit into the +1 eigenstate of the given basis.
    void reset(uint32_t qubit, char basis);

    /// Applies a Pauli product as a gate: stabilizers anticommuting with it change sign.
    void apply_pauli(std::span<const PauliTerm> terms);

    /// When +-p is in the stabilizer group, returns the sign bit of p as an expression.
    std::optional<AffineExpr> peek(const PauliString &p) const;

    /// Stabilizer generator k (for inspection and tests).
    PauliString stabilizer(size_t k) const;

   private:
    bool row_anticommutes(size_t row, std::span<const PauliTerm> terms) const;
    void mul_stab_row(size_t target, size_t source);

    size_t n_;
    std::vector<BitVec> xs_;  // rows [0, n) destabilizers, [n, 2n) stabilizers
    std::vector<BitVec> zs_;
    std::vector<AffineExpr> signs_;  // stabilizer rows only
    size_t num_vars_ = 0;
};

/// Outcome expressions of every measurement of a circuit (noise ignored), in unrolled order.
struct MeasurementAnalysis {
    std::vector<AffineExpr> outcomes;
    size_t num_variables = 0;
};

MeasurementAnalysis analyze_measurements(const Circuit &circuit);

/// Determinism of a circuit's detectors and observables under noiseless execution.
struct DeterminismReport {
    std::vector<size_t> nondeterministic_detectors;
    std::vector<size_t> nondeterministic_observables;
    /// The deterministic noiseless value of each detector / observable parity.
    std::vector<bool> detector_reference;
    std::vector<bool> observable_reference;

    bool ok() const {
        return nondeterministic_detectors.empty() && nondeterministic_observables.empty();
    }
};

DeterminismReport check_determinism(const Circuit &circuit);

/// Samples a noiseless measurement record with stabilizer semantics; random outcomes are uniform.
std::vector<bool> simulate_stabilizer(const Circuit &circuit, uint64_t seed);

/// Converts the qubit targets of a reset/measurement instruction into per-record Pauli products.
std::vector<std::vector<PauliTerm>> measured_products(const Instruction &inst);

}  // namespace pqec

#endif
