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

#ifndef PQEC_PAULI_H
#define PQEC_PAULI_H

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

#include "pqec/bit_vec.h"

namespace pqec {

/// A signed Pauli product in the Hermitian (x, z) encoding: Y is stored as x=1, z=1.
struct PauliString {
    bool sign = false;  // true means -1
    BitVec xs;
    BitVec zs;

    PauliString() = default;
    explicit PauliString(size_t num_qubits) : xs(num_qubits), zs(num_qubits) {
    }

    /// Parses "+XZ_Y", "-IXX" etc. '_' and 'I' both mean identity.
    static PauliString from_str(std::string_view text);
    /// Single letter `pauli` ('X', 'Y' or 'Z') on each of `qubits`.
    static PauliString product(size_t num_qubits, char pauli, std::initializer_list<uint32_t> qubits);

    size_t num_qubits() const {
        return xs.size();
    }
    char letter(size_t q) const;
    void set_letter(size_t q, char pauli);
    size_t weight() const;
    bool commutes(const PauliString &other) const;

    /// this <- this * rhs; returns the exponent of i (mod 4) of the resulting scalar factor, which
    /// is folded into `sign` when even. Callers multiplying anticommuting terms get an odd value.
    uint8_t inplace_right_mul(const PauliString &rhs);

    bool operator==(const PauliString &other) const {
        return sign == other.sign && xs == other.xs && zs == other.zs;
    }
    std::string str() const;
};

/// Exponent of i (mod 4) produced by the word-parallel product of two Hermitian Pauli strings
/// (lhs <- lhs * rhs), updating lhs bits in place.
uint8_t pauli_mul_words(std::span<uint64_t> lhs_x, std::span<uint64_t> lhs_z, std::span<const uint64_t> rhs_x,
                        std::span<const uint64_t> rhs_z);

}  // namespace pqec

#endif
