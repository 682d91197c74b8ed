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
#include "pqec/layout.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace pqec {

size_t Layout::num_bulk() const {
    size_t n = 0;
    for (const auto &p : plaquettes) {
        n += p.is_bulk();
    }
    return n;
}

Layout generate_layout(int d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("width must be odd and at least 3, got " + std::to_string(d));
    }
    Layout layout;
    layout.d = d;
    for (int y = 0; y < d; y++) {
        for (int x = 0; x < d; x++) {
            layout.coords.push_back({(double)x, (double)y});
        }
    }
    uint32_t next = (uint32_t)(d * d);
    auto in_patch = [&](int x, int y) { return x >= 0 && y >= 0 && x < d && y < d; };
    for (int j = -1; j < d; j++) {
        for (int i = -1; i < d; i++) {
            Plaquette p;
            p.basis = ((i + j) % 2 == 0) ? 'X' : 'Z';
            p.i = i;
            p.j = j;
            bool bulk = i >= 0 && j >= 0 && i < d - 1 && j < d - 1;
            if (bulk) {
                if (p.basis == 'X') {
                    p.data = {layout.data_qubit(i, j), layout.data_qubit(i + 1, j), layout.data_qubit(i + 1, j + 1),
                              layout.data_qubit(i, j + 1)};
                    layout.coords.push_back({i + 0.5, j + 0.25});
                    layout.coords.push_back({i + 0.5, j + 0.75});
                } else {
                    p.data = {layout.data_qubit(i, j), layout.data_qubit(i, j + 1), layout.data_qubit(i + 1, j + 1),
                              layout.data_qubit(i + 1, j)};
                    layout.coords.push_back({i + 0.25, j + 0.5});
                    layout.coords.push_back({i + 0.75, j + 0.5});
                }
                p.ancillas = {next, next + 1};
                next += 2;
            } else {
                bool top_bottom = (j == -1 || j == d - 1) && i >= 0 && i < d - 1;
                bool left_right = (i == -1 || i == d - 1) && j >= 0 && j < d - 1;
                if (!(top_bottom && p.basis == 'X') && !(left_right && p.basis == 'Z')) {
                    continue;
                }
                for (int dy = 0; dy < 2; dy++) {
                    for (int dx = 0; dx < 2; dx++) {
                        if (in_patch(i + dx, j + dy)) {
                            p.data.push_back(layout.data_qubit(i + dx, j + dy));
                        }
                    }
                }
            }
            layout.plaquettes.push_back(std::move(p));
        }
    }
    layout.num_qubits = next;

    for (const auto &p : layout.plaquettes) {
        char other = p.basis == 'X' ? 'Z' : 'X';
        if (p.is_bulk()) {
            auto [a, b, c, dq] = std::array<uint32_t, 4>{p.data[0], p.data[1], p.data[2], p.data[3]};
            layout.edges.push_back({a, p.ancillas[0], p.basis});
            layout.edges.push_back({b, p.ancillas[0], p.basis});
            layout.edges.push_back({dq, p.ancillas[1], p.basis});
            layout.edges.push_back({c, p.ancillas[1], p.basis});
            layout.edges.push_back({p.ancillas[0], p.ancillas[1], other});
        } else {
            layout.edges.push_back({p.data[0], p.data[1], p.basis});
        }
    }
    return layout;
}

namespace {

using Point = std::pair<double, double>;

double cross(Point o, Point a, Point b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

bool segments_cross(Point p1, Point p2, Point q1, Point q2) {
    double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
    double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
    return ((d1 > 1e-12 && d2 < -1e-12) || (d1 < -1e-12 && d2 > 1e-12)) &&
           ((d3 > 1e-12 && d4 < -1e-12) || (d3 < -1e-12 && d4 > 1e-12));
}

}  // namespace

LayoutGeometry analyze_geometry(const Layout &layout) {
    LayoutGeometry g;
    const auto &pos = layout.coords;
    size_t e = layout.edges.size();
    for (size_t a = 0; a < e; a++) {
        for (size_t b = a + 1; b < e; b++) {
            const auto &ea = layout.edges[a], &eb = layout.edges[b];
            if (ea.a == eb.a || ea.a == eb.b || ea.b == eb.a || ea.b == eb.b) {
                continue;
            }
            g.num_crossings += segments_cross(pos[ea.a], pos[ea.b], pos[eb.a], pos[eb.b]);
        }
    }

    // Faces of the straight-line embedding by walking half-edges in angular order.
    size_t n = layout.num_qubits;
    std::vector<std::vector<uint32_t>> adj(n);
    std::set<std::pair<uint32_t, uint32_t>> weight2;
    for (const auto &edge : layout.edges) {
        adj[edge.a].push_back(edge.b);
        adj[edge.b].push_back(edge.a);
        if (layout.is_data(edge.a) && layout.is_data(edge.b)) {
            weight2.insert({std::min(edge.a, edge.b), std::max(edge.a, edge.b)});
        }
    }
    for (uint32_t v = 0; v < n; v++) {
        std::sort(adj[v].begin(), adj[v].end(), [&](uint32_t x, uint32_t y) {
            return std::atan2(pos[x].second - pos[v].second, pos[x].first - pos[v].first) <
                   std::atan2(pos[y].second - pos[v].second, pos[y].first - pos[v].first);
        });
    }
    std::set<std::pair<uint32_t, uint32_t>> used;
    std::vector<std::pair<size_t, double>> faces;
    std::vector<bool> face_touches_weight2;
    for (uint32_t u = 0; u < n; u++) {
        for (uint32_t v : adj[u]) {
            if (used.count({u, v})) {
                continue;
            }
            size_t length = 0;
            double area = 0;
            bool touches = false;
            uint32_t a = u, b = v;
            while (!used.count({a, b})) {
                used.insert({a, b});
                length++;
                area += pos[a].first * pos[b].second - pos[b].first * pos[a].second;
                touches |= weight2.count({std::min(a, b), std::max(a, b)}) > 0;
                // Next half-edge: the neighbor of b that precedes a in b's angular order.
                const auto &nb = adj[b];
                size_t k = std::find(nb.begin(), nb.end(), a) - nb.begin();
                uint32_t c = nb[(k + nb.size() - 1) % nb.size()];
                a = b;
                b = c;
            }
            faces.push_back({length, area / 2});
            face_touches_weight2.push_back(touches);
        }
    }
    // Union-find over vertices for the component count.
    std::vector<uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (const auto &edge : layout.edges) {
        parent[find(edge.a)] = find(edge.b);
    }
    for (uint32_t v = 0; v < n; v++) {
        g.num_components += find(v) == v;
    }
    // With this traversal bounded faces have positive signed area; each component's outer face is
    // the one negative face.
    for (size_t k = 0; k < faces.size(); k++) {
        if (faces[k].second > 1e-9) {
            g.face_sizes.push_back(faces[k].first);
            if (!face_touches_weight2[k]) {
                g.interior_face_sizes.push_back(faces[k].first);
            }
        }
    }
    return g;
}

}  // namespace pqec
