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

#ifndef PQEC_STATS_H
#define PQEC_STATS_H

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pqec/frame_sampler.h"

namespace pqec {

/// One memory experiment configuration of a campaign.
struct Task {
    std::string construction = "pentagon";
    char basis = 'X';
    int d = 3;
    int rounds = 3;
    double p = 0.001;

    /// Text key identifying the task in a statistics table.
    std::string key() const;
    bool operator==(const Task &other) const = default;
};

/// Exact counts for one task; several rows with the same task add up.
struct StatsRow {
    Task task;
    size_t qubits = 0;
    uint64_t shots = 0;
    uint64_t errors = 0;
    double seconds = 0;
};

/// Physical qubits of one code block.
size_t footprint_qubits(const std::string &construction, int d);

constexpr std::string_view STATS_HEADER = "construction,basis,d,rounds,p,q,shots,errors,seconds";

std::string format_stats_row(const StatsRow &row);
/// Parses a statistics CSV (header required). Throws std::runtime_error naming the line.
std::vector<StatsRow> parse_stats_csv(std::string_view text);
/// Sums rows with equal tasks, keeping first-appearance order.
std::vector<StatsRow> merge_stats(const std::vector<StatsRow> &rows);

/// Task list CSV with header "construction,basis,d,rounds,p"; an empty rounds field means d.
std::vector<Task> parse_tasks_csv(std::string_view text);
std::string format_tasks_csv(const std::vector<Task> &tasks);

struct CollectOptions {
    uint64_t max_shots = 1000000;
    uint64_t max_errors = 1000;
    uint64_t seed = 0;
    size_t workers = 1;
    /// Shots per batch, at most FrameSampler::BATCH_SHOTS. Resumed campaigns must keep it fixed.
    size_t batch_shots = FrameSampler::BATCH_SHOTS;
    /// Called after each finished task with the row of new shots.
    std::function<void(const StatsRow &)> on_row;
};

struct TaskFailure {
    Task task;
    std::string message;
};

struct CollectResult {
    /// Rows of newly taken shots, one per task that took any.
    std::vector<StatsRow> rows;
    std::vector<TaskFailure> failures;
};

/// Samples and decodes each task in batches of options.batch_shots until its shots, counting
/// `existing` rows, reach max_shots or its errors reach max_errors. Batch b of a task always uses
/// the same random stream, so counts are identical for any worker count and for a campaign split
/// across resumed runs. A failing task is reported and the campaign continues.
CollectResult collect(const std::vector<Task> &tasks, const std::vector<StatsRow> &existing,
                      const CollectOptions &options);

}  // namespace pqec

#endif
