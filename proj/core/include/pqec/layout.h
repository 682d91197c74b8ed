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
#ifndef PQEC_LAYOUT_H
#define PQEC_LAYOUT_H

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace pqec {

/// A stabilizer of the rotated surface code.
///
/// Plaquette (i, j) covers the data qubits with x in {i, i+1} and y in {j, j+1} that lie inside the
/// patch. Weight-4 plaquettes list their data in gadget order (a, b, c, d): limb one touches a and
/// b through m1, limb two touches d and c through m2.
struct Plaquette {
    char basis = 'X';
    int i = 0;
    int j = 0;
    std::vector<uint32_t> data;
    std::array<uint32_t, 2> ancillas{0, 0};

    bool is_bulk() const {
        return data.size() == 4;
    }
    std::pair<double, double> center() const {
        return {i + 0.5, j + 0.5};
    }
};

/// A pair-measurement edge of the tiling.
struct LayoutEdge {
    uint32_t a;
    uint32_t b;
    char basis;
};

/// Geometry of a distance-d patch: data qubit (x, y) has id y * d + x and position (x, y);
/// ancillas follow the data qubits, two per weight-4 plaquette, in plaquette order.
struct Layout {
    int d = 0;
    size_t num_qubits = 0;
    std::vector<Plaquette> plaquettes;
    std::vector<LayoutEdge> edges;
    std::vector<std::pair<double, double>> coords;

    uint32_t data_qubit(int x, int y) const {
        return (uint32_t)(y * d + x);
    }
    size_t num_data() const {
        return (size_t)d * d;
    }
    bool is_data(uint32_t q) const {
        return q < num_data();
    }
    size_t num_bulk() const;
};

/// Builds the layout. Throws std::invalid_argument unless d is odd and at least 3.
Layout generate_layout(int d);

/// Embedding facts about the edge set, computed from the qubit coordinates.
struct LayoutGeometry {
    size_t num_crossings = 0;
    /// Vertex counts of the bounded faces of the embedding.
    std::vector<size_t> face_sizes;
    /// Vertex counts of bounded faces that touch no weight-2 edge.
    std::vector<size_t> interior_face_sizes;
    size_t num_components = 0;
};

LayoutGeometry analyze_geometry(const Layout &layout);

}  // namespace pqec

#endif
