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

#ifndef PQEC_GF2_H
#define PQEC_GF2_H

#include <vector>

#include "pqec/bit_vec.h"

namespace pqec {

/// Incremental Gaussian elimination over GF(2).
///
/// Each inserted row carries a "combination" vector recording which caller tags XOR together to
/// produce it, so a successful reduction also says how the target was expressed.
class Gf2Eliminator {
   public:
    Gf2Eliminator() = default;

    /// Reduces `v` in place against the basis and XORs the used combinations into `combo`.
    /// Returns true when `v` ends up zero, i.e. the original `v` was in the span.
    bool reduce(BitVec &v, BitVec &combo) const;

    /// Inserts `v`, tagged by `combo`. Returns false (and leaves the basis unchanged) when `v` is
    /// already in the span; in that case `v` is reduced to zero and `combo` holds a dependency.
    bool insert(BitVec &v, BitVec &combo);

    size_t rank() const {
        return rows_.size();
    }

   private:
    struct Row {
        size_t pivot;
        BitVec bits;
        BitVec combo;
    };
    std::vector<Row> rows_;
};

/// Returns a basis of {x : sum_i x_i rows[i] = 0}, each element a BitVec over row indices.
std::vector<BitVec> gf2_null_space(const std::vector<BitVec> &rows);

/// Rank of the span of `rows`.
size_t gf2_rank(const std::vector<BitVec> &rows);

/// True when both families span the same GF(2) subspace.
bool gf2_same_span(const std::vector<BitVec> &a, const std::vector<BitVec> &b);

}  // namespace pqec

#endif
