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

#include "pqec/gf2.h"

namespace pqec {

bool Gf2Eliminator::reduce(BitVec &v, BitVec &combo) const {
    for (const Row &row : rows_) {
        if (row.pivot < v.size() && v[row.pivot]) {
            v ^= row.bits;
            combo ^= row.combo;
        }
    }
    return v.none();
}

bool Gf2Eliminator::insert(BitVec &v, BitVec &combo) {
    if (reduce(v, combo)) {
        return false;
    }
    rows_.push_back(Row{v.first_one(), v, combo});
    return true;
}

std::vector<BitVec> gf2_null_space(const std::vector<BitVec> &rows) {
    Gf2Eliminator elim;
    std::vector<BitVec> result;
    for (size_t k = 0; k < rows.size(); k++) {
        BitVec v = rows[k];
        BitVec combo(rows.size());
        combo.set(k, true);
        if (!elim.insert(v, combo)) {
            result.push_back(std::move(combo));
        }
    }
    return result;
}

size_t gf2_rank(const std::vector<BitVec> &rows) {
    Gf2Eliminator elim;
    for (const BitVec &r : rows) {
        BitVec v = r;
        BitVec combo;
        elim.insert(v, combo);
    }
    return elim.rank();
}

bool gf2_same_span(const std::vector<BitVec> &a, const std::vector<BitVec> &b) {
    size_t ra = gf2_rank(a);
    if (ra != gf2_rank(b)) {
        return false;
    }
    std::vector<BitVec> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return gf2_rank(both) == ra;
}

}  // namespace pqec
