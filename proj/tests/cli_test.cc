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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "gtest/gtest.h"
#include "pqec/stats.h"

using namespace pqec;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("pqec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override {
        std::filesystem::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    std::string slurp(const std::string &name) const {
        std::ifstream in(path(name));
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::filesystem::path dir_;
};

std::vector<std::string> data_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            lines.push_back(line);
        }
    }
    return lines;
}

}  // namespace

TEST_F(CliTest, verify_passes) {
    CliRun r = run({"verify"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("16/16 flows pass"), std::string::npos);
}

TEST_F(CliTest, version_and_help_exit_zero) {
    CliRun v = run({"--version"});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("pqec "), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, usage_errors_exit_two) {
    CliRun even = run({"gen", "--d", "4"});
    EXPECT_EQ(even.code, 2);
    EXPECT_NE(even.err.find("width must be odd"), std::string::npos);
    EXPECT_EQ(run({"gen"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"gen", "--d", "3", "--basis", "Y"}).code, 2);
    EXPECT_EQ(run({"collect", "--widths", "3", "--error-rates", "0.2", "--out", path("s.csv")}).code, 2);
    EXPECT_EQ(run({"collect", "--widths", "4", "--error-rates", "0.01", "--out", path("s.csv")}).code, 2);
    EXPECT_FALSE(std::filesystem::exists(path("s.csv")));
}

TEST_F(CliTest, missing_input_exits_one) {
    CliRun r = run({"noisify", "--in", path("absent.txt"), "--p", "0.01"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("cannot read"), std::string::npos);
}

TEST_F(CliTest, circuit_pipeline) {
    ASSERT_EQ(run({"gen", "--d", "3", "--out", path("c.txt")}).code, 0);
    ASSERT_EQ(run({"noisify", "--in", path("c.txt"), "--p", "0.01", "--out", path("n.txt")}).code, 0);
    ASSERT_EQ(run({"sample", "--circuit", path("n.txt"), "--shots", "2000", "--seed", "5", "--out", path("e.bin")}).code, 0);
    ASSERT_EQ(run({"dem", "--circuit", path("n.txt"), "--out", path("m.dem")}).code, 0);
    CliRun dec = run({"decode", "--dem", path("m.dem"), "--events", path("e.bin"), "--out", path("p.txt")});
    ASSERT_EQ(dec.code, 0) << dec.err;
    EXPECT_EQ(data_lines(slurp("p.txt")).size(), 2000u);
    EXPECT_NE(dec.out.find("of 2000 shots"), std::string::npos);
    CliRun dist = run({"distance", "--dem", path("m.dem")});
    EXPECT_EQ(dist.code, 0);
    EXPECT_EQ(dist.out, "2\n");
    EXPECT_EQ(run({"distance", "--circuit", path("n.txt")}).out, "2\n");
    EXPECT_EQ(run({"distance"}).code, 2);
}

TEST_F(CliTest, collect_resume_matches_single_run) {
    std::vector<std::string> base{"collect", "--widths", "3", "--error-rates", "0.01", "--bases", "X,Z",
                                  "--batch-shots", "500", "--no-timing", "--seed", "9"};
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return a;
    };
    ASSERT_EQ(run(with({"--out", path("one.csv"), "--max-shots", "3000"})).code, 0);
    ASSERT_EQ(run(with({"--out", path("two.csv"), "--max-shots", "1000"})).code, 0);
    ASSERT_EQ(run(with({"--out", path("two.csv"), "--max-shots", "3000", "--workers", "3"})).code, 0);
    auto totals = [&](const std::string &name) { return merge_stats(parse_stats_csv(slurp(name))); };
    auto one = totals("one.csv");
    auto two = totals("two.csv");
    ASSERT_EQ(one.size(), 2u);
    ASSERT_EQ(two.size(), 2u);
    for (size_t k = 0; k < 2; k++) {
        EXPECT_EQ(one[k].shots, 3000u);
        EXPECT_EQ(one[k].shots, two[k].shots);
        EXPECT_EQ(one[k].errors, two[k].errors);
    }
    EXPECT_EQ(data_lines(slurp("two.csv")).size(), 1u + 4u);
}

TEST_F(CliTest, config_file_with_flag_override) {
    std::ofstream(path("c.conf")) << "[collect]\nwidths = 3\nerror-rates = 0.01\nmax-shots = 400\n"
                                     "batch-shots = 200\nno-timing = true\nout = "
                                  << path("ignored.csv") << "\n";
    CliRun r = run({"--config", path("c.conf"), "collect", "--out", path("s.csv"), "--max-shots", "600"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = parse_stats_csv(slurp("s.csv"));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].shots, 600u);
    EXPECT_EQ(rows[0].seconds, 0.0);
    EXPECT_FALSE(std::filesystem::exists(path("ignored.csv")));
}

TEST_F(CliTest, fit_and_footprint_rows_per_group) {
    ASSERT_EQ(run({"collect", "--widths", "3,5", "--error-rates", "0.002,0.003", "--bases", "X,Z", "--max-shots",
                   "16384", "--no-timing", "--out", path("s.csv")})
                  .code,
              0);
    CliRun f = run({"fit", "--stats", path("s.csv"), "--out", path("f.json")});
    ASSERT_EQ(f.code, 0) << f.err;
    CliRun fp = run({"footprint", "--fit", path("f.json"), "--out", path("fp.csv")});
    ASSERT_EQ(fp.code, 0) << fp.err;
    auto lines = data_lines(slurp("fp.csv"));
    ASSERT_FALSE(lines.empty());
    EXPECT_EQ(lines[0], "construction,basis,p,q_low,q_mle,q_high");
    EXPECT_EQ(lines.size() + (fp.err.empty() ? 0 : std::count(fp.err.begin(), fp.err.end(), '\n')), 1u + 4u);
}

TEST_F(CliTest, fit_rejects_unknown_group) {
    std::ofstream(path("s.csv")) << STATS_HEADER << "\npentagon,X,3,3,0.01,17,100,5,0\n";
    EXPECT_EQ(run({"fit", "--stats", path("s.csv"), "--group-by", "colour"}).code, 2);
}
