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

#include <random>

#include "benchmark/benchmark.h"
#include "pqec/blossom.h"
#include "pqec/codegen.h"
#include "pqec/dem.h"
#include "pqec/frame_sampler.h"
#include "pqec/matching.h"
#include "pqec/noise.h"

using namespace pqec;

namespace {

Circuit noisy_memory(int d, double p) {
    return noisify(generate_memory_circuit(d, d, 'X'), p);
}

void BM_frame_sampler(benchmark::State &state) {
    int d = (int)state.range(0);
    FrameSampler sampler(noisy_memory(d, 0.003));
    uint64_t batch = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.sample_batch(FrameSampler::BATCH_SHOTS, 1, batch++));
    }
    state.SetItemsProcessed(state.iterations() * FrameSampler::BATCH_SHOTS);
}
BENCHMARK(BM_frame_sampler)->Arg(3)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_error_model(benchmark::State &state) {
    Circuit c = noisy_memory((int)state.range(0), 0.003);
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_error_model(c));
    }
}
BENCHMARK(BM_error_model)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_decode(benchmark::State &state) {
    int d = (int)state.range(0);
    double p = (double)state.range(1) / 10000;
    Circuit c = noisy_memory(d, p);
    DetectorErrorModel dem = extract_error_model(c);
    decompose_hyperedges(dem);
    MatchingGraph graph(dem);
    Decoder decoder(graph);
    DetectionData data = FrameSampler(c).sample(4096, 3);
    size_t shot = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decoder.predict(data, shot));
        shot = (shot + 1) % data.shots;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_decode)->Args({5, 10})->Args({5, 60})->Args({7, 10})->Args({7, 60})->Args({9, 60})->Unit(benchmark::kMicrosecond);

void BM_blossom(benchmark::State &state) {
    int n = (int)state.range(0);
    std::mt19937_64 rng(4);
    std::vector<WeightedEdge> edges;
    for (int u = 0; u < n; u++) {
        for (int v = u + 1; v < n; v++) {
            edges.push_back({u, v, (int64_t)(rng() % 1000)});
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_weight_matching(n, edges));
    }
}
BENCHMARK(BM_blossom)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
