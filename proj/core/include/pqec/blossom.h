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

#ifndef PQEC_BLOSSOM_H
#define PQEC_BLOSSOM_H

#include <cstdint>
#include <vector>

namespace pqec {

struct WeightedEdge {
    int u;
    int v;
    int64_t weight;
};

/// Maximum-weight (not necessarily perfect) matching of a general graph by Edmonds' blossom
/// algorithm with dual variables, O(n^3). Returns mate[v] (or -1). Result depends only on the
/// vertex count and the edge list order.
std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges);

}  // namespace pqec

#endif
