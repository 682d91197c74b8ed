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
#include "pqec/circuit.h"

#include "gtest/gtest.h"

using namespace pqec;

TEST(circuit, validate_empty) {
    EXPECT_TRUE(validate(Circuit{}).empty());
}

TEST(circuit, validate_repeated_pair_qubit) {
    Circuit c = parse_text("MXX 0 0\n");
    auto diags = validate(c);
    ASSERT_EQ(diags.size(), 1);
    EXPECT_EQ(diags[0].rule, "repeated qubit in pair op");
    EXPECT_EQ(diags[0].location, "0");
}

TEST(circuit, validate_unresolvable_record) {
    Circuit c = parse_text("MZ 0 1\nDETECTOR rec[-3]\n");
    auto diags = validate(c);
    ASSERT_EQ(diags.size(), 1);
    EXPECT_EQ(diags[0].rule, "unresolvable record reference");
    EXPECT_EQ(diags[0].location, "1");
}

TEST(circuit, validate_odd_pair_targets) {
    Circuit c = parse_text("MZZ 0 1 2\n");
    auto diags = validate(c);
    ASSERT_FALSE(diags.empty());
    EXPECT_EQ(diags[0].rule, "odd number of targets in pair op");
}

TEST(circuit, parse_basic) {
    Circuit c = parse_text("MZZ 0 1\n");
    ASSERT_EQ(c.instructions.size(), 1);
    EXPECT_EQ(c.instructions[0].gate, Gate::MZZ);
    EXPECT_EQ(c.instructions[0].targets, (std::vector<Target>{Target::qubit(0), Target::qubit(1)}));

    Circuit d = parse_text("MZ 0 1 2 3 4 5 6 7 8 9 10 11 12 13\nDETECTOR rec[-1] rec[-14]\n");
    EXPECT_EQ(d.instructions[1].targets, (std::vector<Target>{Target::rec(1), Target::rec(14)}));
    EXPECT_EQ(d.num_detectors(), 1);
}

TEST(circuit, parse_errors_carry_position) {
    try {
        parse_text("MZ 0\nMZZ(0.1 0 1\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 2);
    }
    EXPECT_THROW(parse_text("FOO 1\n"), ParseError);
    EXPECT_THROW(parse_text("REPEAT 2 {\nMZ 0\n"), ParseError);
    EXPECT_THROW(parse_text("DETECTOR rec[1]\n"), ParseError);
}

TEST(circuit, round_trip) {
    std::string text =
        "RZ 0 1\n"
        "TICK\n"
        "MZZ(0.001) 0 1\n"
        "DEP2(0.001) 0 1\n"
        "REPEAT 3 {\n"
        "    MX 0\n"
        "    DETECTOR(1, 2) rec[-1] rec[-2]\n"
        "    OBSERVABLE_INCLUDE(0) rec[-1]\n"
        "}\n"
        "MZ 0 1\n";
    Circuit c = parse_text(text);
    EXPECT_EQ(serialize_text(c), text);
    EXPECT_EQ(parse_text(serialize_text(c)), c);
}

TEST(circuit, comments_and_blank_lines) {
    Circuit c = parse_text("# header\n\nMZ 0  # trailing\n");
    EXPECT_EQ(serialize_text(c), "MZ 0\n");
}

TEST(circuit, format_double_is_shortest) {
    EXPECT_EQ(format_double(0.001), "0.001");
    EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
    EXPECT_EQ(format_double(1), "1");
}

TEST(circuit, unroll_single_iteration) {
    Circuit c = parse_text("REPEAT 1 {\nMZ 0\n}\n");
    EXPECT_EQ(unroll(c), parse_text("MZ 0\n"));
}

TEST(circuit, unroll_record_offsets) {
    Circuit c = parse_text("MZ 0\nREPEAT 3 {\nMZ 0\nDETECTOR rec[-1] rec[-2]\n}\n");
    Circuit u = unroll(c);
    EXPECT_EQ(u.instructions.size(), 7);
    EXPECT_EQ(unroll(u), u);
    auto a = resolve_annotations(c);
    auto b = resolve_annotations(u);
    EXPECT_EQ(a.detectors, b.detectors);
    EXPECT_EQ(a.detectors, (std::vector<std::vector<uint32_t>>{{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(c.num_measurements(), 4);
    EXPECT_EQ(u.num_measurements(), 4);
}

TEST(circuit, unroll_rejects_invalid) {
    EXPECT_THROW(unroll(parse_text("MXX 1 1\n")), std::invalid_argument);
}

TEST(circuit, observables_accumulate) {
    Circuit c = parse_text("MZ 0 1\nOBSERVABLE_INCLUDE(0) rec[-1]\nOBSERVABLE_INCLUDE(0) rec[-1] rec[-2]\n");
    auto r = resolve_annotations(c);
    ASSERT_EQ(r.observables.size(), 1);
    EXPECT_EQ(r.observables[0], (std::vector<uint32_t>{0}));
}

TEST(circuit, counts) {
    Circuit c = parse_text("RZ 0 4\nTICK\nMZZ 0 4\nTICK\nMZ 0\n");
    EXPECT_EQ(c.num_qubits(), 5);
    EXPECT_EQ(c.num_ticks(), 2);
    EXPECT_FALSE(c.has_noise());
    EXPECT_TRUE(parse_text("XERR(0.1) 0\n").has_noise());
}
