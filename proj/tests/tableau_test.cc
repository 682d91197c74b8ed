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
#include "pqec/tableau.h"

#include "gtest/gtest.h"

using namespace pqec;

TEST(tableau, eigenstate_measurement) {
    for (uint64_t seed = 0; seed < 10; seed++) {
        auto r = simulate_stabilizer(parse_text("RZ 0\nMZ 0\n"), seed);
        EXPECT_EQ(r, std::vector<bool>{false});
        r = simulate_stabilizer(parse_text("RZ 0 1\nMZZ 0 1\n"), seed);
        EXPECT_EQ(r, std::vector<bool>{false});
        r = simulate_stabilizer(parse_text("RX 0\nMX 0\nRY 1\nMY 1\n"), seed);
        EXPECT_EQ(r, (std::vector<bool>{false, false}));
    }
}

TEST(tableau, repeated_commuting_measurement) {
    size_t ones = 0;
    for (uint64_t seed = 0; seed < 200; seed++) {
        auto r = simulate_stabilizer(parse_text("RZ 0 1\nMXX 0 1\nMXX 0 1\n"), seed);
        ASSERT_EQ(r.size(), 2);
        EXPECT_EQ(r[0], r[1]);
        ones += r[0];
    }
    EXPECT_GT(ones, 60);
    EXPECT_LT(ones, 140);
}

TEST(tableau, symbolic_outcomes) {
    auto a = analyze_measurements(parse_text("RZ 0 1\nMXX 0 1\nMZ 0\nMZZ 0 1\nMX 0\nMX 1\n"));
    ASSERT_EQ(a.outcomes.size(), 5);
    EXPECT_FALSE(a.outcomes[0].is_constant());
    EXPECT_FALSE(a.outcomes[1].is_constant());
    EXPECT_EQ(a.outcomes[2], AffineExpr{});
    // X0 X1 was fixed by the first measurement and commutes with Z0 Z1 but not Z0.
    AffineExpr parity = a.outcomes[3];
    parity ^= a.outcomes[4];
    EXPECT_FALSE(parity.is_constant());
}

TEST(tableau, y_measurement_signs) {
    // Y = iXZ, so after fixing X and Z, Y0Y1 = -X0X1 Z0Z1.
    auto a = analyze_measurements(parse_text("RZ 0 1\nMXX 0 1\nMZZ 0 1\nMYY 0 1\n"));
    AffineExpr expected = a.outcomes[0];
    expected ^= a.outcomes[1];
    expected.constant ^= true;
    EXPECT_EQ(a.outcomes[2], expected);
}

TEST(tableau, determinism_report) {
    auto good = check_determinism(parse_text("RZ 0 1\nMXX 0 1\nMXX 0 1\nDETECTOR rec[-1] rec[-2]\n"));
    EXPECT_TRUE(good.ok());
    auto bad = check_determinism(parse_text("RZ 0 1\nMXX 0 1\nDETECTOR rec[-1]\n"));
    EXPECT_FALSE(bad.ok());
    EXPECT_EQ(bad.nondeterministic_detectors, std::vector<size_t>{0});
    auto inverted = check_determinism(parse_text("RX 0\nMZ 0\nMYY 0 1\nMXX 0 1\nMZZ 0 1\nDETECTOR rec[-1] rec[-2] rec[-3]\n"));
    EXPECT_TRUE(inverted.ok());
    EXPECT_EQ(inverted.detector_reference, std::vector<bool>{true});
}

TEST(tableau, peek) {
    SymbolicTableau t = SymbolicTableau::bell_pairs(1);
    auto yy = t.peek(PauliString::from_str("YY"));
    ASSERT_TRUE(yy.has_value());
    EXPECT_TRUE(yy->constant);
    auto xx = t.peek(PauliString::from_str("XX"));
    ASSERT_TRUE(xx.has_value());
    EXPECT_FALSE(xx->constant);
    EXPECT_FALSE(t.peek(PauliString::from_str("XI")).has_value());
}
