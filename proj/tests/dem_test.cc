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

#include "pqec/dem.h"

#include <cmath>
#include <set>

#include "fault_util.h"
#include "gtest/gtest.h"
#include "pqec/noise.h"

using namespace pqec;
using namespace pqec::testing;

TEST(dem, merge_probability) {
    EXPECT_EQ(merge_probability(0, 0.25), 0.25);
    EXPECT_DOUBLE_EQ(merge_probability(0.1, 0.2), 0.1 * 0.8 + 0.2 * 0.9);
    EXPECT_DOUBLE_EQ(merge_probability(0.5, 0.3), 0.5);
}

TEST(dem, single_channels) {
    {
        auto dem = extract_error_model(parse_text("RZ 0\nXERR(0.125) 0\nMZ 0\nDETECTOR rec[-1]\n"));
        ASSERT_EQ(dem.mechanisms.size(), 1u);
        EXPECT_EQ(dem.mechanisms[0].probability, 0.125);
        EXPECT_EQ(dem.mechanisms[0].symptom, (Symptom{{0}, 0}));
    }
    {
        // X and Y terms of DEP1 both flip the readout.
        double p = 0.09;
        auto dem = extract_error_model(parse_text("RZ 0\nDEP1(0.09) 0\nMZ 0\nDETECTOR rec[-1]\n"));
        ASSERT_EQ(dem.mechanisms.size(), 1u);
        double a = p / 3;
        EXPECT_NEAR(dem.mechanisms[0].probability, 2 * a * (1 - a), 1e-15);
    }
    {
        // DEP2 before reading both qubits: {D0} from X/Y on qubit 0 only, {D1} likewise, both
        // from X/Y on both. Each class has four terms.
        double p = 0.15;
        auto dem = extract_error_model(
            parse_text("RZ 0 1\nDEP2(0.15) 0 1\nMZ 0 1\nDETECTOR rec[-2]\nDETECTOR rec[-1]\nOBSERVABLE_INCLUDE(0) rec[-1]\n"));
        ASSERT_EQ(dem.mechanisms.size(), 3u);
        double a = p / 15, q = 0;
        for (int k = 0; k < 4; k++) {
            q = q * (1 - a) + a * (1 - q);
        }
        EXPECT_EQ(dem.mechanisms[0].symptom, (Symptom{{0}, 0}));
        EXPECT_EQ(dem.mechanisms[1].symptom, (Symptom{{0, 1}, 1}));
        EXPECT_EQ(dem.mechanisms[2].symptom, (Symptom{{1}, 1}));
        for (const auto &m : dem.mechanisms) {
            EXPECT_NEAR(m.probability, q, 1e-15);
        }
    }
    {
        auto dem = extract_error_model(parse_text("RZ 0\nMZ(0.2) 0\nDETECTOR rec[-1]\nMZ 0\nDETECTOR rec[-1]\n"));
        ASSERT_EQ(dem.mechanisms.size(), 1u);
        EXPECT_EQ(dem.mechanisms[0].symptom, (Symptom{{0}, 0}));
        EXPECT_NE(dem.mechanisms[0].source.find("measurement 0"), std::string::npos);
    }
}

TEST(dem, nondeterministic_detector_fails) {
    EXPECT_THROW(extract_error_model(parse_text("RX 0\nXERR(0.1) 0\nMZ 0\nDETECTOR rec[-1]\n")), std::runtime_error);
}

TEST(dem, zero_noise_is_empty) {
    auto dem = extract_error_model(noisify(generate_memory_circuit(3, 3, 'X'), 0));
    EXPECT_TRUE(dem.mechanisms.empty());
    EXPECT_EQ(dem.num_detectors, 24u);
    EXPECT_EQ(dem.num_observables, 1u);
}

TEST(dem, text_round_trip) {
    auto dem = extract_error_model(noisify(generate_memory_circuit(3, 3, 'Z'), 0.003));
    std::string text = dem_to_text(dem);
    DetectorErrorModel back = parse_dem(text);
    EXPECT_EQ(back.num_detectors, dem.num_detectors);
    ASSERT_EQ(back.mechanisms.size(), dem.mechanisms.size());
    for (size_t k = 0; k < dem.mechanisms.size(); k++) {
        EXPECT_EQ(back.mechanisms[k].symptom, dem.mechanisms[k].symptom);
        EXPECT_EQ(back.mechanisms[k].probability, dem.mechanisms[k].probability);
    }
    EXPECT_EQ(dem_to_text(back), text);

    DetectorErrorModel parsed = parse_dem("detectors 4\nobservables 1\n# note\nerror(0.1) D0 D1 ^ D2 L0\n");
    ASSERT_EQ(parsed.mechanisms.size(), 1u);
    EXPECT_EQ(parsed.mechanisms[0].symptom, (Symptom{{0, 1, 2}, 1}));
    ASSERT_EQ(parsed.mechanisms[0].components.size(), 2u);
    EXPECT_EQ(dem_to_text(parsed), "detectors 4\nobservables 1\nerror(0.1) D0 D1 ^ D2 L0\n");

    EXPECT_THROW(parse_dem("detectors 2\nerror(0.1) D5\n"), std::runtime_error);
    EXPECT_THROW(parse_dem("detectors 2\nerror(1.5) D1\n"), std::runtime_error);
    EXPECT_THROW(parse_dem("detectors 2\nerr(0.1) D1\n"), std::runtime_error);
    EXPECT_THROW(parse_dem("detectors 2\nerror(0.1) Q1\n"), std::runtime_error);
}

TEST(dem, symptoms_are_single_fault_symptoms) {
    // Every mechanism reported by the model must be reproduced by placing its source fault with
    // certainty in the noiseless circuit; checked on the mechanisms coming from measurement flips.
    Circuit c = generate_memory_circuit(3, 3, 'X');
    Circuit flat = unroll(c);
    auto dem = extract_error_model(noisify(c, 0.001));
    size_t checked = 0;
    std::set<uint32_t> used;
    ResolvedAnnotations ann = resolve_annotations(flat);
    for (const auto &group : {ann.detectors, ann.observables}) {
        for (const auto &ms : group) {
            used.insert(ms.begin(), ms.end());
        }
    }
    std::set<Symptom> symptoms;
    for (const auto &m : dem.mechanisms) {
        symptoms.insert(m.symptom);
    }
    for (uint32_t k = 0; k < flat.num_measurements(); k++) {
        Symptom s = certain_symptom(with_measurement_fault(flat, k, true));
        EXPECT_EQ(s.empty(), !used.count(k)) << "measurement " << k;
        if (!s.empty()) {
            EXPECT_TRUE(symptoms.count(s)) << "measurement " << k;
            checked++;
        }
    }
    EXPECT_EQ(checked, used.size());
}

TEST(dem, detection_rates_agree_with_sampling) {
    Circuit noisy = noisify(generate_memory_circuit(3, 3, 'X'), 0.004);
    auto dem = extract_error_model(noisy);
    std::vector<double> no_flip(dem.num_detectors, 1.0);
    for (const auto &m : dem.mechanisms) {
        for (uint32_t d : m.symptom.detectors) {
            no_flip[d] *= 1 - 2 * m.probability;
        }
    }
    size_t shots = 200000;
    DetectionData data = FrameSampler(noisy).sample(shots, 4);
    for (size_t d = 0; d < dem.num_detectors; d++) {
        double rate = (1 - no_flip[d]) / 2;
        size_t hits = 0;
        for (size_t s = 0; s < shots; s++) {
            hits += data.detector(s, d);
        }
        double sigma = std::sqrt(shots * rate * (1 - rate));
        // Merged DEP terms are exclusive, not independent: allow the second-order discrepancy.
        EXPECT_LE(std::abs((double)hits - shots * rate), 5 * sigma + 0.002 * shots * rate) << "D" << d;
    }
}

TEST(dem, both_hook_orientations_present) {
    for (char basis : {'X', 'Z'}) {
        MemoryExperiment e = build_memory_experiment(5, 5, basis);
        Circuit flat = unroll(e.circuit);
        auto dem = extract_error_model(noisify(e.circuit, 0.001));
        std::set<Symptom> symptoms;
        for (const auto &m : dem.mechanisms) {
            symptoms.insert(m.symptom);
        }
        int pi = central_plaquette(e.layout, basis);
        const Plaquette &p = e.layout.plaquettes[pi];
        // Hooks of a plaquette are data errors of its own Pauli type.
        Gate error = basis == 'X' ? Gate::XERR : Gate::ZERR;
        uint32_t core = find_measurement(e, pi, 2, MeasurementRole::CORE);

        Symptom core_flip = certain_symptom(with_measurement_fault(flat, core, true));
        ASSERT_FALSE(core_flip.empty());
        EXPECT_GT(symptoms.count(core_flip), 0u);
        EXPECT_TRUE(some_layer_matches(flat, error, {p.data[0], p.data[1]}, core_flip)) << basis;

        Symptom pair_error = certain_symptom(
            with_measurement_fault(flat, core, false, error, {p.ancillas[0], p.ancillas[1]}));
        ASSERT_FALSE(pair_error.empty());
        EXPECT_GT(symptoms.count(pair_error), 0u);
        EXPECT_TRUE(some_layer_matches(flat, error, {p.data[1], p.data[2]}, pair_error)) << basis;

        // The two hooks differ from each other and from single data errors.
        EXPECT_NE(core_flip, pair_error);
        EXPECT_FALSE(some_layer_matches(flat, error, {p.data[0]}, core_flip));
    }
}
