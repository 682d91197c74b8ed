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

#include "pqec/pauli.h"

#include <stdexcept>

namespace pqec {

uint8_t pauli_mul_words(std::span<uint64_t> lhs_x, std::span<uint64_t> lhs_z, std::span<const uint64_t> rhs_x,
                        std::span<const uint64_t> rhs_z) {
    size_t popcnt1 = 0;
    size_t popcnt2 = 0;
    for (size_t k = 0; k < lhs_x.size(); k++) {
        uint64_t x1 = lhs_x[k];
        uint64_t z1 = lhs_z[k];
        uint64_t x2 = rhs_x[k];
        uint64_t z2 = rhs_z[k];
        uint64_t nx = x1 ^ x2;
        uint64_t nz = z1 ^ z2;
        uint64_t x1z2 = x1 & z2;
        uint64_t anti = (x2 & z1) ^ x1z2;
        // Per-lane exponent of i is anti + 2 * ((nx ^ nz ^ x1z2) & anti).
        popcnt1 += std::popcount(anti);
        popcnt2 += std::popcount((nx ^ nz ^ x1z2) & anti);
        lhs_x[k] = nx;
        lhs_z[k] = nz;
    }
    return (uint8_t)((popcnt1 + 2 * popcnt2) & 3);
}

PauliString PauliString::from_str(std::string_view text) {
    bool sign = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        sign = text[0] == '-';
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    result.sign = sign;
    for (size_t q = 0; q < text.size(); q++) {
        result.set_letter(q, text[q]);
    }
    return result;
}

PauliString PauliString::product(size_t num_qubits, char pauli, std::initializer_list<uint32_t> qubits) {
    PauliString result(num_qubits);
    for (uint32_t q : qubits) {
        result.set_letter(q, pauli);
    }
    return result;
}

char PauliString::letter(size_t q) const {
    bool x = xs[q];
    bool z = zs[q];
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : '_');
}

void PauliString::set_letter(size_t q, char pauli) {
    switch (pauli) {
        case 'I':
        case '_':
            xs.set(q, false);
            zs.set(q, false);
            break;
        case 'X':
            xs.set(q, true);
            zs.set(q, false);
            break;
        case 'Y':
            xs.set(q, true);
            zs.set(q, true);
            break;
        case 'Z':
            xs.set(q, false);
            zs.set(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: ") + pauli);
    }
}

size_t PauliString::weight() const {
    size_t n = 0;
    for (size_t k = 0; k < xs.num_words(); k++) {
        n += std::popcount(xs.words()[k] | zs.words()[k]);
    }
    return n;
}

bool PauliString::commutes(const PauliString &other) const {
    size_t parity = 0;
    for (size_t k = 0; k < xs.num_words(); k++) {
        parity += std::popcount((xs.words()[k] & other.zs.words()[k]) ^ (zs.words()[k] & other.xs.words()[k]));
    }
    return (parity & 1) == 0;
}

uint8_t PauliString::inplace_right_mul(const PauliString &rhs) {
    uint8_t log_i = pauli_mul_words(xs.words(), zs.words(), rhs.xs.words(), rhs.zs.words());
    if (rhs.sign) {
        log_i ^= 2;
    }
    if (log_i & 2) {
        sign = !sign;
    }
    return log_i;
}

std::string PauliString::str() const {
    std::string out(1, sign ? '-' : '+');
    for (size_t q = 0; q < num_qubits(); q++) {
        out += letter(q);
    }
    return out;
}

}  // namespace pqec
