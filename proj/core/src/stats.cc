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

#include "pqec/stats.h"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pqec/circuit.h"
#include "pqec/codegen.h"
#include "pqec/dem.h"
#include "pqec/frame_sampler.h"
#include "pqec/matching.h"
#include "pqec/noise.h"

namespace pqec {

std::string Task::key() const {
    return construction + "," + basis + "," + std::to_string(d) + "," + std::to_string(rounds) + "," +
           format_double(p);
}

size_t footprint_qubits(const std::string &construction, int d) {
    if (construction != "pentagon") {
        throw std::invalid_argument("unknown construction '" + construction + "'");
    }
    return (size_t)d * d + 2 * (size_t)(d - 1) * (d - 1);
}

std::string format_stats_row(const StatsRow &row) {
    char secs[64];
    std::snprintf(secs, sizeof(secs), "%.3f", row.seconds);
    return row.task.key() + "," + std::to_string(row.qubits) + "," + std::to_string(row.shots) + "," +
           std::to_string(row.errors) + "," + secs;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
T parse_number(std::string_view s, size_t line, const char *what) {
    s = trim(s);
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("line " + std::to_string(line) + ": bad " + what + " '" + std::string(s) + "'");
    }
    return v;
}

/// Calls fn(fields, line number) for every non-empty line after the header.
template <typename Fn>
void for_each_record(std::string_view text, std::string_view header, Fn &&fn) {
    size_t pos = 0;
    size_t line_no = 0;
    bool seen_header = false;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        line_no++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!seen_header) {
            if (line != header) {
                throw std::runtime_error("line " + std::to_string(line_no) + ": expected header '" +
                                         std::string(header) + "'");
            }
            seen_header = true;
            continue;
        }
        fn(split_fields(line), line_no);
    }
    if (!seen_header) {
        throw std::runtime_error("missing header '" + std::string(header) + "'");
    }
}

Task parse_task_fields(const std::vector<std::string_view> &f, size_t line) {
    Task t;
    t.construction = std::string(trim(f[0]));
    std::string_view b = trim(f[1]);
    if (b != "X" && b != "Z") {
        throw std::runtime_error("line " + std::to_string(line) + ": basis must be X or Z");
    }
    t.basis = b[0];
    t.d = parse_number<int>(f[2], line, "width");
    t.rounds = trim(f[3]).empty() ? t.d : parse_number<int>(f[3], line, "rounds");
    t.p = parse_number<double>(f[4], line, "error rate");
    return t;
}

}  // namespace

std::vector<StatsRow> parse_stats_csv(std::string_view text) {
    std::vector<StatsRow> rows;
    for_each_record(text, STATS_HEADER, [&](const std::vector<std::string_view> &f, size_t line) {
        if (f.size() != 9) {
            throw std::runtime_error("line " + std::to_string(line) + ": expected 9 fields");
        }
        StatsRow r;
        r.task = parse_task_fields(f, line);
        r.qubits = parse_number<size_t>(f[5], line, "qubit count");
        r.shots = parse_number<uint64_t>(f[6], line, "shots");
        r.errors = parse_number<uint64_t>(f[7], line, "errors");
        r.seconds = parse_number<double>(f[8], line, "seconds");
        if (r.errors > r.shots) {
            throw std::runtime_error("line " + std::to_string(line) + ": more errors than shots");
        }
        rows.push_back(r);
    });
    return rows;
}

std::vector<StatsRow> merge_stats(const std::vector<StatsRow> &rows) {
    std::vector<StatsRow> out;
    std::map<std::string, size_t> index;
    for (const auto &r : rows) {
        auto [it, fresh] = index.emplace(r.task.key(), out.size());
        if (fresh) {
            out.push_back(r);
        } else {
            StatsRow &acc = out[it->second];
            acc.shots += r.shots;
            acc.errors += r.errors;
            acc.seconds += r.seconds;
        }
    }
    return out;
}

std::vector<Task> parse_tasks_csv(std::string_view text) {
    std::vector<Task> tasks;
    for_each_record(text, "construction,basis,d,rounds,p", [&](const std::vector<std::string_view> &f, size_t line) {
        if (f.size() != 5) {
            throw std::runtime_error("line " + std::to_string(line) + ": expected 5 fields");
        }
        tasks.push_back(parse_task_fields(f, line));
    });
    return tasks;
}

std::string format_tasks_csv(const std::vector<Task> &tasks) {
    std::string out = "construction,basis,d,rounds,p\n";
    for (const auto &t : tasks) {
        out += t.key() + "\n";
    }
    return out;
}

namespace {

uint64_t task_seed(uint64_t seed, const Task &task) {
    uint64_t h = 1469598103934665603ull ^ seed;
    for (char c : task.key()) {
        h = (h ^ (uint8_t)c) * 1099511628211ull;
    }
    return h;
}

struct Prepared {
    Circuit circuit;
    std::unique_ptr<FrameSampler> sampler;
    DetectorErrorModel dem;
    std::unique_ptr<MatchingGraph> graph;
    std::unique_ptr<Decoder> decoder;
};

void prepare(const Task &task, Prepared &out) {
    if (!(task.p >= 0 && task.p <= 1)) {
        throw std::invalid_argument("error rate must be in [0, 1]");
    }
    out.circuit = noisify(generate_memory_circuit(task.d, task.rounds, task.basis, task.construction), task.p);
    out.sampler = std::make_unique<FrameSampler>(out.circuit);
    out.dem = extract_error_model(out.circuit);
    decompose_hyperedges(out.dem);
    out.graph = std::make_unique<MatchingGraph>(out.dem);
    out.decoder = std::make_unique<Decoder>(*out.graph);
}

}  // namespace

CollectResult collect(const std::vector<Task> &tasks, const std::vector<StatsRow> &existing,
                      const CollectOptions &options) {
    CollectResult result;
    std::vector<StatsRow> previous = merge_stats(existing);
    std::map<std::string, StatsRow> done;
    for (const auto &r : previous) {
        done[r.task.key()] = r;
    }
    size_t workers = std::max<size_t>(1, options.workers);
    if (options.batch_shots == 0 || options.batch_shots > FrameSampler::BATCH_SHOTS) {
        throw std::invalid_argument("batch_shots must be in [1, " + std::to_string(FrameSampler::BATCH_SHOTS) + "]");
    }
    const size_t batch = options.batch_shots;
    for (const Task &task : tasks) {
        auto start = std::chrono::steady_clock::now();
        uint64_t shots = 0, errors = 0;
        if (auto it = done.find(task.key()); it != done.end()) {
            shots = it->second.shots;
            errors = it->second.errors;
        }
        StatsRow row;
        row.task = task;
        try {
            row.qubits = footprint_qubits(task.construction, task.d);
            if (shots >= options.max_shots || errors >= options.max_errors) {
                continue;
            }
            Prepared prep;
            prepare(task, prep);
            uint64_t seed = task_seed(options.seed, task);
            uint64_t next_batch = (shots + batch - 1) / batch;
            while (shots < options.max_shots && errors < options.max_errors) {
                std::vector<uint64_t> wave_errors(workers, 0);
                std::vector<std::string> wave_failures(workers);
                auto work = [&](size_t w) {
                    try {
                        DetectionData data = prep.sampler->sample_batch(batch, seed, next_batch + w);
                        wave_errors[w] = prep.decoder->count_errors(data);
                    } catch (const std::exception &e) {
                        wave_failures[w] = e.what();
                    }
                };
                std::vector<std::thread> threads;
                for (size_t w = 1; w < workers; w++) {
                    threads.emplace_back(work, w);
                }
                work(0);
                for (auto &t : threads) {
                    t.join();
                }
                for (size_t w = 0; w < workers; w++) {
                    if (!wave_failures[w].empty()) {
                        throw std::runtime_error(wave_failures[w]);
                    }
                    if (shots >= options.max_shots || errors >= options.max_errors) {
                        break;
                    }
                    shots += batch;
                    errors += wave_errors[w];
                    row.shots += batch;
                    row.errors += wave_errors[w];
                }
                next_batch += workers;
            }
        } catch (const std::exception &e) {
            result.failures.push_back({task, e.what()});
            continue;
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        done[task.key()] = StatsRow{task, row.qubits, shots, errors, 0};
        if (row.shots > 0) {
            result.rows.push_back(row);
            if (options.on_row) {
                options.on_row(row);
            }
        }
    }
    return result;
}

}  // namespace pqec
