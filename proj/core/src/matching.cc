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

#include "pqec/matching.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "pqec/blossom.h"

namespace pqec {

namespace {

using GraphlikeIndex = std::map<std::vector<uint32_t>, std::vector<uint64_t>>;

bool search_decomposition(const GraphlikeIndex &index, std::vector<uint32_t> remaining, uint64_t observables,
                          size_t budget, std::vector<Symptom> &out) {
    if (remaining.empty()) {
        return observables == 0;
    }
    if (budget == 0 || budget < (remaining.size() + 1) / 2) {
        return false;
    }
    uint32_t u = remaining[0];
    auto try_piece = [&](const std::vector<uint32_t> &dets) {
        auto it = index.find(dets);
        if (it == index.end()) {
            return false;
        }
        std::vector<uint32_t> rest;
        std::set_difference(remaining.begin(), remaining.end(), dets.begin(), dets.end(), std::back_inserter(rest));
        for (uint64_t mask : it->second) {
            out.push_back(Symptom{dets, mask});
            if (search_decomposition(index, rest, observables ^ mask, budget - 1, out)) {
                return true;
            }
            out.pop_back();
        }
        return false;
    };
    if (try_piece({u})) {
        return true;
    }
    for (size_t k = 1; k < remaining.size(); k++) {
        if (try_piece({u, remaining[k]})) {
            return true;
        }
    }
    return false;
}

}  // namespace

void decompose_hyperedges(DetectorErrorModel &dem) {
    GraphlikeIndex index;
    for (const auto &m : dem.mechanisms) {
        size_t n = m.symptom.detectors.size();
        if (n >= 1 && n <= 2) {
            auto &masks = index[m.symptom.detectors];
            if (std::find(masks.begin(), masks.end(), m.symptom.observables) == masks.end()) {
                masks.push_back(m.symptom.observables);
            }
        }
    }
    for (auto &[dets, masks] : index) {
        std::sort(masks.begin(), masks.end());
    }
    for (auto &m : dem.mechanisms) {
        size_t n = m.symptom.detectors.size();
        if (n <= 2) {
            m.components.clear();
            continue;
        }
        std::vector<Symptom> parts;
        bool found = false;
        for (size_t budget = (n + 1) / 2; budget <= n && !found; budget++) {
            parts.clear();
            found = search_decomposition(index, m.symptom.detectors, m.symptom.observables, budget, parts);
        }
        if (!found) {
            std::string dets;
            for (uint32_t d : m.symptom.detectors) {
                dets += " D" + std::to_string(d);
            }
            throw std::runtime_error("undecomposable hyperedge" + dets + " from " +
                                     (m.source.empty() ? std::string("unknown source") : m.source));
        }
        m.components = std::move(parts);
    }
}

MatchingGraph::MatchingGraph(const DetectorErrorModel &dem)
    : num_detectors_(dem.num_detectors), num_observables_(dem.num_observables) {
    struct Entry {
        double probability = 0;
        std::vector<uint32_t> sources;
    };
    std::map<std::pair<uint32_t, uint32_t>, std::map<uint64_t, Entry>> acc;
    auto add = [&](const Symptom &s, double p, uint32_t source) {
        if (s.detectors.empty() || p <= 0) {
            return;
        }
        uint32_t a = s.detectors[0];
        uint32_t b = s.detectors.size() == 2 ? s.detectors[1] : BOUNDARY;
        if (a >= num_detectors_ || (b != BOUNDARY && b >= num_detectors_)) {
            throw std::invalid_argument("error model mechanism references a detector out of range");
        }
        Entry &e = acc[{a, b}][s.observables];
        e.probability = merge_probability(e.probability, p);
        e.sources.push_back(source);
    };
    for (uint32_t k = 0; k < dem.mechanisms.size(); k++) {
        const auto &m = dem.mechanisms[k];
        if (m.symptom.detectors.size() > 2) {
            if (m.components.empty()) {
                throw std::invalid_argument("error model has an undecomposed hyperedge; decompose it first");
            }
            for (const Symptom &c : m.components) {
                if (c.detectors.size() > 2) {
                    throw std::invalid_argument("hyperedge component flips more than two detectors");
                }
                add(c, m.probability, k);
            }
        } else {
            add(m.symptom, m.probability, k);
        }
    }
    adjacency_.resize(num_detectors_ + 1);
    constexpr double MAX_Q = 0.5 - 1e-9;
    for (auto &[ab, by_mask] : acc) {
        auto best = by_mask.begin();
        std::vector<uint32_t> sources;
        for (auto it = by_mask.begin(); it != by_mask.end(); ++it) {
            if (it->second.probability > best->second.probability) {
                best = it;
            }
            sources.insert(sources.end(), it->second.sources.begin(), it->second.sources.end());
        }
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
        double q = best->second.probability;
        if (q > MAX_Q) {
            q = MAX_Q;
            num_clamped_++;
        }
        double w = std::log((1 - q) / q);
        MatchingEdge e{ab.first, ab.second, q, w, std::max<int64_t>(0, std::llround(w * WEIGHT_SCALE)), best->first,
                       std::move(sources)};
        uint32_t id = (uint32_t)edges_.size();
        uint32_t nb = ab.second == BOUNDARY ? (uint32_t)num_detectors_ : ab.second;
        adjacency_[ab.first].push_back({nb, id});
        adjacency_[nb].push_back({ab.first, id});
        edges_.push_back(std::move(e));
    }
}

int64_t MatchingGraph::find_edge(uint32_t a, uint32_t b) const {
    if (a == BOUNDARY) {
        std::swap(a, b);
    }
    if (a == BOUNDARY || a >= num_detectors_) {
        return -1;
    }
    uint32_t nb = b == BOUNDARY ? (uint32_t)num_detectors_ : b;
    for (auto [n, id] : adjacency_[a]) {
        if (n == nb) {
            return id;
        }
    }
    return -1;
}

namespace {

constexpr int64_t UNREACHABLE = INT64_MAX;
constexpr int64_t NO_BOUNDARY = int64_t{1} << 40;

}  // namespace

void Decoder::shortest_paths(uint32_t source, bool through_boundary, std::vector<int64_t> &dist,
                             std::vector<uint64_t> &mask) const {
    size_t boundary = graph_.num_detectors();
    dist.assign(boundary + 1, UNREACHABLE);
    mask.assign(boundary + 1, 0);
    using Item = std::pair<int64_t, uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0;
    heap.push({0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[u] || (u == boundary && u != source && !through_boundary)) {
            continue;
        }
        for (auto [v, id] : graph_.neighbors(u)) {
            const auto &e = graph_.edges()[id];
            int64_t nd = d + e.int_weight;
            if (nd < dist[v]) {
                dist[v] = nd;
                mask[v] = mask[u] ^ e.observables;
                heap.push({nd, v});
            }
        }
    }
}

Decoder::Decoder(const MatchingGraph &graph) : graph_(graph) {
    size_t n = graph.num_detectors();
    shortest_paths((uint32_t)n, true, boundary_dist_, boundary_mask_);
    if (n <= TABLE_LIMIT) {
        pair_dist_.assign(n * n, INT32_MAX);
        pair_mask_.assign(n * n, 0);
        std::vector<int64_t> dist;
        std::vector<uint64_t> mask;
        for (uint32_t u = 0; u < n; u++) {
            shortest_paths(u, false, dist, mask);
            for (uint32_t v = 0; v < n; v++) {
                if (dist[v] < INT32_MAX) {
                    pair_dist_[(size_t)u * n + v] = (int32_t)dist[v];
                    pair_mask_[(size_t)u * n + v] = mask[v];
                }
            }
        }
    }
}

Correction Decoder::decode(const std::vector<uint32_t> &flagged_in) const {
    std::vector<uint32_t> flagged = flagged_in;
    std::sort(flagged.begin(), flagged.end());
    flagged.erase(std::unique(flagged.begin(), flagged.end()), flagged.end());
    Correction result;
    size_t m = flagged.size();
    if (m == 0) {
        return result;
    }
    size_t n = graph_.num_detectors();
    std::vector<int64_t> db(m);
    for (size_t i = 0; i < m; i++) {
        if (flagged[i] >= n) {
            throw std::invalid_argument("flagged detector out of range");
        }
        int64_t d = boundary_dist_[flagged[i]];
        db[i] = d == UNREACHABLE ? NO_BOUNDARY : d;
    }

    struct Pair {
        int i;
        int j;
        int64_t saving;
        uint64_t mask;
    };
    std::vector<Pair> pairs;
    if (!pair_dist_.empty()) {
        for (size_t i = 0; i < m; i++) {
            const int32_t *row = &pair_dist_[(size_t)flagged[i] * n];
            for (size_t j = i + 1; j < m; j++) {
                int32_t d = row[flagged[j]];
                if (d != INT32_MAX && db[i] + db[j] - d > 0) {
                    pairs.push_back({(int)i, (int)j, db[i] + db[j] - d, pair_mask_[(size_t)flagged[i] * n + flagged[j]]});
                }
            }
        }
    } else {
        std::vector<int64_t> dist;
        std::vector<uint64_t> mask;
        for (size_t i = 0; i < m; i++) {
            shortest_paths(flagged[i], false, dist, mask);
            for (size_t j = i + 1; j < m; j++) {
                int64_t d = dist[flagged[j]];
                if (d != UNREACHABLE && db[i] + db[j] - d > 0) {
                    pairs.push_back({(int)i, (int)j, db[i] + db[j] - d, mask[flagged[j]]});
                }
            }
        }
    }

    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (const Pair &p : pairs) {
        parent[find(p.i)] = find(p.j);
    }
    std::vector<std::vector<int>> cluster_pairs(m);
    for (size_t k = 0; k < pairs.size(); k++) {
        cluster_pairs[find(pairs[k].i)].push_back((int)k);
    }
    std::vector<int> mate(m, -1);
    std::vector<int> local(m, -1);
    for (size_t root = 0; root < m; root++) {
        const auto &ids = cluster_pairs[root];
        if (ids.empty()) {
            continue;
        }
        std::vector<int> members;
        for (int k : ids) {
            for (int x : {pairs[k].i, pairs[k].j}) {
                if (local[x] == -1) {
                    local[x] = (int)members.size();
                    members.push_back(x);
                }
            }
        }
        std::vector<WeightedEdge> edges;
        edges.reserve(ids.size());
        for (int k : ids) {
            edges.push_back({local[pairs[k].i], local[pairs[k].j], pairs[k].saving});
        }
        std::vector<int> local_mate = max_weight_matching((int)members.size(), edges);
        for (size_t x = 0; x < members.size(); x++) {
            if (local_mate[x] >= 0) {
                mate[members[x]] = members[local_mate[x]];
            }
        }
    }

    int64_t cost = 0;
    for (size_t i = 0; i < m; i++) {
        cost += db[i];
        if (mate[i] < 0) {
            result.observables ^= boundary_mask_[flagged[i]];
        }
    }
    for (const Pair &p : pairs) {
        if (mate[p.i] == p.j) {
            cost -= p.saving;
            result.observables ^= p.mask;
        }
    }
    result.cost = cost;
    return result;
}

uint64_t Decoder::predict(const DetectionData &data, size_t shot) const {
    return decode(data.fired(shot)).observables;
}

size_t Decoder::count_errors(const DetectionData &data) const {
    size_t errors = 0;
    for (size_t s = 0; s < data.shots; s++) {
        errors += predict(data, s) != data.observable_mask(s);
    }
    return errors;
}

size_t estimate_circuit_distance(const DetectorErrorModel &dem) {
    size_t n = dem.num_detectors;
    size_t k = dem.num_observables;
    if (k == 0) {
        return 0;
    }
    if (k > 16) {
        throw std::invalid_argument("distance search supports at most 16 observables");
    }
    struct UnitEdge {
        uint32_t a;
        uint32_t b;
        uint64_t mask;
        auto operator<=>(const UnitEdge &) const = default;
    };
    std::vector<UnitEdge> unit;
    auto add = [&](const Symptom &s) {
        if (s.detectors.empty()) {
            return;
        }
        uint32_t a = s.detectors[0];
        uint32_t b = s.detectors.size() == 2 ? s.detectors[1] : (uint32_t)n;
        unit.push_back({a, b, s.observables});
    };
    for (const auto &m : dem.mechanisms) {
        if (m.probability <= 0) {
            continue;
        }
        if (m.symptom.detectors.empty() && m.symptom.observables) {
            return 1;
        }
        if (m.symptom.detectors.size() <= 2) {
            add(m.symptom);
        } else if (m.components.empty()) {
            throw std::invalid_argument("error model has an undecomposed hyperedge; decompose it first");
        }
    }
    std::sort(unit.begin(), unit.end());
    unit.erase(std::unique(unit.begin(), unit.end()), unit.end());
    std::vector<std::vector<std::pair<uint32_t, uint64_t>>> adj(n + 1);
    for (const auto &e : unit) {
        adj[e.a].push_back({e.b, e.mask});
        adj[e.b].push_back({e.a, e.mask});
    }
    size_t masks = size_t{1} << k;
    size_t best = 0;
    std::vector<uint32_t> dist((n + 1) * masks);
    for (uint32_t start = 0; start <= n; start++) {
        if (adj[start].empty()) {
            continue;
        }
        std::fill(dist.begin(), dist.end(), UINT32_MAX);
        std::deque<size_t> queue;
        dist[start * masks] = 0;
        queue.push_back(start * masks);
        while (!queue.empty()) {
            size_t state = queue.front();
            queue.pop_front();
            uint32_t d = dist[state];
            if (best && d + 1 >= best) {
                break;
            }
            size_t u = state / masks;
            uint64_t mask = state % masks;
            for (auto [v, em] : adj[u]) {
                size_t next = v * masks + (mask ^ em);
                if (v == start && (mask ^ em) != 0) {
                    best = best ? std::min<size_t>(best, d + 1) : d + 1;
                }
                if (dist[next] == UINT32_MAX) {
                    dist[next] = d + 1;
                    queue.push_back(next);
                }
            }
        }
    }
    return best;
}

}  // namespace pqec
