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

#ifndef PQEC_NOISE_H
#define PQEC_NOISE_H

#include "pqec/circuit.h"

namespace pqec {

/// Single-parameter pair-measurement depolarizing noise.
///
/// Resets are followed by a Pauli that flips them (ZERR after RX, XERR after RZ and RY).
/// Single-qubit measurements get flip probability p and a trailing DEP1(p); pair measurements get
/// flip probability p and a trailing DEP2(p). Each qubit not touched in a TICK-delimited layer gets
/// DEP1(p) at the end of that layer.
///
/// Throws std::invalid_argument when p is outside [0, 1] or the circuit already has noise.
Circuit noisify(const Circuit &circuit, double p);

}  // namespace pqec

#endif
