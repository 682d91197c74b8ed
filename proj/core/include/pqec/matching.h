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

#ifndef PQEC_MATCHING_H
#define PQEC_MATCHING_H

#include <cstdint>
#include <vector>

#include "pqec/dem.h"
#include "pqec/frame_sampler.h"

namespace pqec {

/// Rewrites every mechanism flipping more than two detectors as an XOR of existing graphlike
/// mechanisms (at most two detectors each, observables included), stored in its components.
/// Among valid decompositions the one with fewest components is chosen, ties broken by the
/// lexicographic order of the component symptoms. Throws std::runtime_error("undecomposable
/// hyperedge ...") naming the mechanism's source otherwise.
void decompose_hyperedges(DetectorErrorModel &dem);

struct MatchingEdge {
    uint32_t a;
    uint32_t b;  // MatchingGraph::BOUNDARY for boundary edges
    double probability;
    double weight;  // ln((1 - q) / q)
    int64_t int_weight;
    uint64_t observables;
    std::vector<uint32_t> sources;  // mechanism indices
};

/// Detectors plus one boundary node; one edge per distinct detector pair. The probability of a
/// decomposed hyperedge is folded into each of its components. Parallel mechanisms with equal
/// observable masks merge; with differing masks the more likely one wins.
class MatchingGraph {
   public:
    static constexpr uint32_t BOUNDARY = UINT32_MAX;
    /// Integer weight units per nat.
    static constexpr double WEIGHT_SCALE = 1024;

    explicit MatchingGraph(const DetectorErrorModel &dem);

    size_t num_detectors() const {
        return num_detectors_;
    }
    size_t num_observables() const {
        return num_observables_;
    }
    const std::vector<MatchingEdge> &edges() const {
        return edges_;
    }
    /// Number of edges whose merged probability reached 1/2 and was clamped.
    size_t num_clamped() const {
        return num_clamped_;
    }
    /// Index of the edge between a and b (either may be BOUNDARY), or -1.
    int64_t find_edge(uint32_t a, uint32_t b) const;
    /// Adjacency as (neighbor node, edge index); the boundary is node num_detectors().
    const std::vector<std::pair<uint32_t, uint32_t>> &neighbors(uint32_t node) const {
        return adjacency_[node];
    }

   private:
    size_t num_detectors_;
    size_t num_observables_;
    size_t num_clamped_ = 0;
    std::vector<MatchingEdge> edges_;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adjacency_;
};

struct Correction {
    uint64_t observables = 0;
    /// Total integer weight of the chosen matching.
    int64_t cost = 0;
};

/// Minimum-weight matching decoder. Every flagged detector is matched either to another flagged
/// detector or to the boundary, minimizing total shortest-path weight. Read-only after
/// construction; safe to share between threads.
class Decoder {
   public:
    explicit Decoder(const MatchingGraph &graph);

    Correction decode(const std::vector<uint32_t> &flagged) const;
    uint64_t predict(const DetectionData &data, size_t shot) const;
    /// Shots whose prediction differs from the recorded observables.
    size_t count_errors(const DetectionData &data) const;

    const MatchingGraph &graph() const {
        return graph_;
    }
    /// Shortest-path distance from a detector to the boundary, or INT64_MAX when unreachable.
    int64_t boundary_distance(uint32_t detector) const {
        return boundary_dist_[detector];
    }

    /// Graphs with at most this many detectors get a precomputed all-pairs distance table.
    static constexpr size_t TABLE_LIMIT = 3000;

   private:
    void shortest_paths(uint32_t source, bool through_boundary, std::vector<int64_t> &dist,
                        std::vector<uint64_t> &mask) const;

    const MatchingGraph &graph_;
    std::vector<int64_t> boundary_dist_;
    std::vector<uint64_t> boundary_mask_;
    std::vector<int32_t> pair_dist_;
    std::vector<uint64_t> pair_mask_;
};

/// Fewest graphlike mechanisms whose combined symptom flips an observable and no detector, by
/// breadth-first search over (node, observable mask) states. Returns 0 when no such set exists.
size_t estimate_circuit_distance(const DetectorErrorModel &dem);

}  // namespace pqec

#endif
