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

#ifndef PQEC_TESTS_ORACLES_H
#define PQEC_TESTS_ORACLES_H

#include <bit>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "pqec/codegen.h"
#include "pqec/dem.h"
#include "pqec/fit.h"
#include "pqec/matching.h"
#include "pqec/noise.h"

namespace pqec::testing {

using Big = boost::multiprecision::cpp_dec_float_50;

/// Minimum matching cost of the flagged detectors by all-pairs shortest paths (through the
/// boundary allowed) and dynamic programming over subsets.
inline int64_t brute_decode_cost(const MatchingGraph &g, const std::vector<uint32_t> &flagged) {
    size_t n = g.num_detectors() + 1;
    const int64_t INF = INT64_MAX / 4;
    std::vector<int64_t> dist(n * n, INF);
    for (size_t v = 0; v < n; v++) {
        dist[v * n + v] = 0;
    }
    for (const auto &e : g.edges()) {
        size_t a = e.a;
        size_t b = e.b == MatchingGraph::BOUNDARY ? n - 1 : e.b;
        dist[a * n + b] = std::min(dist[a * n + b], e.int_weight);
        dist[b * n + a] = std::min(dist[b * n + a], e.int_weight);
    }
    for (size_t k = 0; k < n; k++) {
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                dist[i * n + j] = std::min(dist[i * n + j], dist[i * n + k] + dist[k * n + j]);
            }
        }
    }
    size_t m = flagged.size();
    std::vector<int64_t> best(size_t{1} << m, INF);
    best[0] = 0;
    for (size_t mask = 1; mask < best.size(); mask++) {
        size_t i = std::countr_zero(mask);
        size_t rest = mask & ~(size_t{1} << i);
        int64_t c = dist[flagged[i] * n + n - 1] + best[rest];
        for (size_t j = i + 1; j < m; j++) {
            if (rest >> j & 1) {
                c = std::min(c, dist[flagged[i] * n + flagged[j]] + best[rest & ~(size_t{1} << j)]);
            }
        }
        best[mask] = std::min(best[mask], c);
    }
    return best.back();
}

inline DetectorErrorModel decomposed_model(int d, char basis, double p) {
    DetectorErrorModel dem = extract_error_model(noisify(generate_memory_circuit(d, d, basis), p));
    decompose_hyperedges(dem);
    return dem;
}

struct SymptomHash {
    size_t operator()(const Symptom &s) const {
        size_t h = std::hash<uint64_t>()(s.observables);
        for (uint32_t d : s.detectors) {
            h = h * 1000003 ^ d;
        }
        return h;
    }
};

/// Fewest mechanisms (at most three) whose symptoms XOR to a pure observable flip; 0 if none.
inline size_t exhaustive_distance(const DetectorErrorModel &dem) {
    std::vector<Symptom> s;
    for (const auto &m : dem.mechanisms) {
        s.push_back(m.symptom);
    }
    for (const auto &x : s) {
        if (x.detectors.empty() && x.observables) {
            return 1;
        }
    }
    std::unordered_set<Symptom, SymptomHash> singles(s.begin(), s.end());
    for (const auto &x : s) {
        Symptom want = x;
        want.observables ^= 1;
        if (singles.count(want)) {
            return 2;
        }
    }
    std::unordered_set<Symptom, SymptomHash> pairs;
    for (size_t i = 0; i < s.size(); i++) {
        for (size_t j = i + 1; j < s.size(); j++) {
            Symptom x = s[i];
            x ^= s[j];
            pairs.insert(x);
        }
    }
    for (const auto &x : s) {
        Symptom want = x;
        want.observables ^= 1;
        if (pairs.count(want)) {
            return 3;
        }
    }
    return 0;
}

/// Binomial log-likelihood with log factorials summed term by term at 50 digits.
inline Big big_log_likelihood(double m, double b, const std::vector<FitPoint> &points) {
    Big total = 0;
    for (const auto &p : points) {
        Big log_choose = 0;
        for (uint64_t k = 1; k <= p.shots; k++) {
            log_choose += boost::multiprecision::log(Big(k));
        }
        for (uint64_t k = 1; k <= p.errors; k++) {
            log_choose -= boost::multiprecision::log(Big(k));
        }
        for (uint64_t k = 1; k <= p.shots - p.errors; k++) {
            log_choose -= boost::multiprecision::log(Big(k));
        }
        Big y = Big(m) * Big(p.x) + Big(b);
        Big rate = boost::multiprecision::exp(y);
        total += log_choose + Big(p.errors) * y + Big(p.shots - p.errors) * boost::multiprecision::log(1 - rate);
    }
    return total;
}

}  // namespace pqec::testing

#endif
