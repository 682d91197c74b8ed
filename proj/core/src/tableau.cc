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

#include "pqec/tableau.h"

#include <random>
#include <stdexcept>

namespace pqec {

SymbolicTableau::SymbolicTableau(size_t num_qubits)
    : n_(num_qubits), xs_(2 * num_qubits, BitVec(num_qubits)), zs_(2 * num_qubits, BitVec(num_qubits)),
      signs_(num_qubits) {
    for (size_t k = 0; k < n_; k++) {
        xs_[k].set(k, true);
        zs_[n_ + k].set(k, true);
    }
}

SymbolicTableau SymbolicTableau::bell_pairs(size_t n) {
    SymbolicTableau t(2 * n);
    size_t m = 2 * n;
    for (size_t r = 0; r < 2 * m; r++) {
        t.xs_[r] = BitVec(m);
        t.zs_[r] = BitVec(m);
    }
    for (size_t k = 0; k < n; k++) {
        // Stabilizer X_k X_{k+n}, destabilizer Z_{k+n}.
        t.xs_[m + k].set(k, true);
        t.xs_[m + k].set(k + n, true);
        t.zs_[k].set(k + n, true);
        // Stabilizer Z_k Z_{k+n}, destabilizer X_k.
        t.zs_[m + n + k].set(k, true);
        t.zs_[m + n + k].set(k + n, true);
        t.xs_[n + k].set(k, true);
    }
    return t;
}

void SymbolicTableau::apply_pauli(std::span<const PauliTerm> terms) {
    for (size_t r = 0; r < n_; r++) {
        if (row_anticommutes(n_ + r, terms)) {
            signs_[r].constant ^= true;
        }
    }
}

bool SymbolicTableau::row_anticommutes(size_t row, std::span<const PauliTerm> terms) const {
    bool anti = false;
    for (const PauliTerm &t : terms) {
        bool x = xs_[row][t.qubit];
        bool z = zs_[row][t.qubit];
        switch (t.pauli) {
            case 'X':
                anti ^= z;
                break;
            case 'Z':
                anti ^= x;
                break;
            case 'Y':
                anti ^= x ^ z;
                break;
            default:
                break;
        }
    }
    return anti;
}

void SymbolicTableau::mul_stab_row(size_t target, size_t source) {
    uint8_t log_i = pauli_mul_words(xs_[target].words(), zs_[target].words(), xs_[source].words(),
                                    zs_[source].words());
    if (log_i & 1) {
        throw std::logic_error("multiplied anticommuting stabilizer rows");
    }
    AffineExpr &s = signs_[target - n_];
    s ^= signs_[source - n_];
    if (log_i & 2) {
        s.constant ^= true;
    }
}

AffineExpr SymbolicTableau::measure(std::span<const PauliTerm> terms) {
    size_t pivot = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, terms)) {
            pivot = r;
            break;
        }
    }
    if (pivot < 2 * n_) {
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r == pivot || !row_anticommutes(r, terms)) {
                continue;
            }
            if (r >= n_) {
                mul_stab_row(r, pivot);
            } else {
                pauli_mul_words(xs_[r].words(), zs_[r].words(), xs_[pivot].words(), zs_[pivot].words());
            }
        }
        xs_[pivot - n_] = xs_[pivot];
        zs_[pivot - n_] = zs_[pivot];
        xs_[pivot] = BitVec(n_);
        zs_[pivot] = BitVec(n_);
        for (const PauliTerm &t : terms) {
            if (t.pauli == 'X' || t.pauli == 'Y') {
                xs_[pivot].flip(t.qubit);
            }
            if (t.pauli == 'Z' || t.pauli == 'Y') {
                zs_[pivot].flip(t.qubit);
            }
        }
        AffineExpr v;
        v.vars = BitVec(num_vars_ + 1);
        v.vars.set(num_vars_, true);
        num_vars_++;
        signs_[pivot - n_] = v;
        return v;
    }

    BitVec acc_x(n_);
    BitVec acc_z(n_);
    AffineExpr result;
    for (size_t r = 0; r < n_; r++) {
        if (!row_anticommutes(r, terms)) {
            continue;
        }
        uint8_t log_i = pauli_mul_words(acc_x.words(), acc_z.words(), xs_[n_ + r].words(), zs_[n_ + r].words());
        result ^= signs_[r];
        if (log_i & 2) {
            result.constant ^= true;
        }
    }
    return result;
}

AffineExpr SymbolicTableau::measure(const PauliString &p) {
    std::vector<PauliTerm> terms;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        char c = p.letter(q);
        if (c != '_') {
            terms.push_back(PauliTerm{(uint32_t)q, c});
        }
    }
    AffineExpr e = measure(terms);
    e.constant ^= p.sign;
    return e;
}

void SymbolicTableau::reset(uint32_t qubit, char basis) {
    PauliTerm term{qubit, basis};
    AffineExpr e = measure(std::span<const PauliTerm>(&term, 1));
    // Conditionally apply a Pauli anticommuting with the basis to land in the +1 eigenstate.
    for (size_t r = n_; r < 2 * n_; r++) {
        bool x = xs_[r][qubit];
        bool z = zs_[r][qubit];
        bool flips = basis == 'X' ? x : z;  // Z flips X-like rows; X flips Z-like and Y rows
        if (flips) {
            signs_[r - n_] ^= e;
        }
    }
}

std::optional<AffineExpr> SymbolicTableau::peek(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("peek: qubit count mismatch");
    }
    for (size_t r = n_; r < 2 * n_; r++) {
        PauliString row(n_);
        row.xs = xs_[r];
        row.zs = zs_[r];
        if (!row.commutes(p)) {
            return std::nullopt;
        }
    }
    BitVec acc_x(n_);
    BitVec acc_z(n_);
    AffineExpr result;
    for (size_t r = 0; r < n_; r++) {
        PauliString destab(n_);
        destab.xs = xs_[r];
        destab.zs = zs_[r];
        if (destab.commutes(p)) {
            continue;
        }
        uint8_t log_i = pauli_mul_words(acc_x.words(), acc_z.words(), xs_[n_ + r].words(), zs_[n_ + r].words());
        result ^= signs_[r];
        if (log_i & 2) {
            result.constant ^= true;
        }
    }
    if (!(acc_x == p.xs) || !(acc_z == p.zs)) {
        return std::nullopt;
    }
    result.constant ^= p.sign;
    return result;
}

PauliString SymbolicTableau::stabilizer(size_t k) const {
    PauliString p(n_);
    p.xs = xs_[n_ + k];
    p.zs = zs_[n_ + k];
    if (signs_[k].is_constant()) {
        p.sign = signs_[k].constant;
    }
    return p;
}

std::vector<std::vector<PauliTerm>> measured_products(const Instruction &inst) {
    const GateInfo &info = gate_info(inst.gate);
    char basis = gate_basis(inst.gate);
    std::vector<std::vector<PauliTerm>> result;
    size_t step = info.is_pair ? 2 : 1;
    for (size_t k = 0; k + step <= inst.targets.size(); k += step) {
        std::vector<PauliTerm> terms;
        for (size_t j = 0; j < step; j++) {
            terms.push_back(PauliTerm{inst.targets[k + j].value, basis});
        }
        result.push_back(std::move(terms));
    }
    return result;
}

namespace {

template <typename OnMeasure>
void run_tableau(const Circuit &circuit, SymbolicTableau &tableau, OnMeasure &&on_measure) {
    for (const Instruction &inst : circuit.instructions) {
        if (inst.gate == Gate::REPEAT) {
            for (uint64_t r = 0; r < inst.repeat_count; r++) {
                run_tableau(circuit.blocks[inst.block], tableau, on_measure);
            }
            continue;
        }
        const GateInfo &info = gate_info(inst.gate);
        if (info.is_reset) {
            for (const Target &t : inst.targets) {
                tableau.reset(t.value, gate_basis(inst.gate));
            }
        } else if (info.is_measurement) {
            for (const auto &terms : measured_products(inst)) {
                on_measure(tableau.measure(terms));
            }
        }
    }
}

}  // namespace

MeasurementAnalysis analyze_measurements(const Circuit &circuit) {
    SymbolicTableau tableau(circuit.num_qubits());
    MeasurementAnalysis out;
    run_tableau(circuit, tableau, [&](AffineExpr e) { out.outcomes.push_back(std::move(e)); });
    out.num_variables = tableau.num_variables();
    return out;
}

DeterminismReport check_determinism(const Circuit &circuit) {
    MeasurementAnalysis analysis = analyze_measurements(circuit);
    ResolvedAnnotations ann = resolve_annotations(circuit);
    DeterminismReport report;
    auto parity = [&](const std::vector<uint32_t> &ms) {
        AffineExpr e;
        for (uint32_t m : ms) {
            e ^= analysis.outcomes[m];
        }
        return e;
    };
    for (size_t k = 0; k < ann.detectors.size(); k++) {
        AffineExpr e = parity(ann.detectors[k]);
        if (!e.is_constant()) {
            report.nondeterministic_detectors.push_back(k);
        }
        report.detector_reference.push_back(e.constant);
    }
    for (size_t k = 0; k < ann.observables.size(); k++) {
        AffineExpr e = parity(ann.observables[k]);
        if (!e.is_constant()) {
            report.nondeterministic_observables.push_back(k);
        }
        report.observable_reference.push_back(e.constant);
    }
    return report;
}

std::vector<bool> simulate_stabilizer(const Circuit &circuit, uint64_t seed) {
    MeasurementAnalysis analysis = analyze_measurements(circuit);
    std::mt19937_64 rng(seed);
    std::vector<bool> assignment(analysis.num_variables);
    for (size_t k = 0; k < assignment.size(); k++) {
        assignment[k] = rng() & 1;
    }
    std::vector<bool> record;
    record.reserve(analysis.outcomes.size());
    for (const AffineExpr &e : analysis.outcomes) {
        bool bit = e.constant;
        e.vars.for_each_one([&](size_t v) { bit ^= assignment[v]; });
        record.push_back(bit);
    }
    return record;
}

}  // namespace pqec
