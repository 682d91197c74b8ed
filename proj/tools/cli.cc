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

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "pqec/codegen.h"
#include "pqec/dem.h"
#include "pqec/fit.h"
#include "pqec/flows.h"
#include "pqec/frame_sampler.h"
#include "pqec/matching.h"
#include "pqec/noise.h"
#include "pqec/stats.h"
#include "pqec/tableau.h"
#include "pqec/version.h"

namespace pqec {

namespace {

/// Bad parameters supplied by the user.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string &path) {
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content, std::ostream &out) {
    if (path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content)) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
}

std::string header_comment(const std::string &what) {
    return "# " + build_identifier() + " " + what + "\n";
}

DetectorErrorModel decomposed(const Circuit &circuit) {
    DetectorErrorModel dem = extract_error_model(circuit);
    decompose_hyperedges(dem);
    return dem;
}

DetectorErrorModel load_dem(const std::string &path) {
    DetectorErrorModel dem = parse_dem(read_file(path));
    decompose_hyperedges(dem);
    return dem;
}

struct Campaign {
    std::string tasks_path;
    std::vector<std::string> constructions{"pentagon"};
    std::vector<int> widths;
    std::vector<double> error_rates;
    std::vector<std::string> bases{"X"};
    std::string rounds = "d";
    std::string out;
    uint64_t seed = 0;
    uint64_t max_shots = 1000000;
    uint64_t max_errors = 1000;
    size_t workers = 1;
    size_t batch_shots = FrameSampler::BATCH_SHOTS;
    bool no_timing = false;

    std::vector<Task> tasks() const {
        if (!tasks_path.empty()) {
            return parse_tasks_csv(read_file(tasks_path));
        }
        if (widths.empty() || error_rates.empty()) {
            throw UsageError("collect needs --tasks or both --widths and --error-rates");
        }
        for (int d : widths) {
            if (d < 3 || d % 2 == 0) {
                throw UsageError("width must be odd and at least 3, got " + std::to_string(d));
            }
        }
        for (double p : error_rates) {
            if (!(p > 0 && p <= 0.1)) {
                throw UsageError("error rates must be in (0, 0.1], got " + format_double(p));
            }
        }
        std::vector<Task> out;
        for (const auto &c : constructions) {
            for (const auto &b : bases) {
                if (b != "X" && b != "Z") {
                    throw UsageError("basis must be X or Z, got '" + b + "'");
                }
                for (double p : error_rates) {
                    for (int d : widths) {
                        Task t;
                        t.construction = c;
                        t.basis = b[0];
                        t.d = d;
                        if (rounds == "d") {
                            t.rounds = d;
                        } else {
                            try {
                                t.rounds = std::stoi(rounds);
                            } catch (const std::exception &) {
                                throw UsageError("rounds must be 'd' or a positive integer");
                            }
                        }
                        t.p = p;
                        out.push_back(t);
                    }
                }
            }
        }
        return out;
    }
};

struct GroupKey {
    std::string construction = "*";
    std::string basis = "*";
    std::string p = "*";
    auto operator<=>(const GroupKey &) const = default;
};

nlohmann::json fit_groups(const std::vector<StatsRow> &rows, const std::vector<std::string> &group_by,
                          double ratio, double target, size_t envelope_points) {
    for (const auto &g : group_by) {
        if (g != "construction" && g != "basis" && g != "p") {
            throw UsageError("--group-by accepts construction, basis and p, got '" + g + "'");
        }
    }
    auto has = [&](const char *k) { return std::find(group_by.begin(), group_by.end(), k) != group_by.end(); };
    std::map<GroupKey, std::vector<StatsRow>> groups;
    for (const auto &r : merge_stats(rows)) {
        GroupKey k;
        if (has("construction")) {
            k.construction = r.task.construction;
        }
        if (has("basis")) {
            k.basis = std::string(1, r.task.basis);
        }
        if (has("p")) {
            k.p = format_double(r.task.p);
        }
        groups[k].push_back(r);
    }
    FitGrid grid;
    nlohmann::json out;
    out["version"] = build_identifier();
    out["grid"] = {{"m_min", grid.m_min}, {"m_max", grid.m_max}, {"b_min", grid.b_min},
                   {"b_max", grid.b_max}, {"steps", grid.steps}};
    out["likelihood_ratio"] = ratio;
    out["target"] = target;
    out["x"] = "sqrt(qubits)";
    out["y"] = "natural log of the per-shot logical error rate";
    out["shot"] = "one memory experiment with the recorded number of rounds";
    out["groups"] = nlohmann::json::array();
    for (const auto &[key, members] : groups) {
        nlohmann::json g;
        g["construction"] = key.construction;
        g["basis"] = key.basis;
        g["p"] = key.p == "*" ? nlohmann::json("*") : nlohmann::json(std::stod(key.p));
        std::vector<FitPoint> points;
        g["points"] = nlohmann::json::array();
        for (const auto &r : members) {
            FitPoint pt = make_fit_point(std::sqrt((double)r.qubits), r.shots, r.errors);
            FitPoint c = clamp(pt);
            bool used = !discard_saturated({pt}).empty();
            g["points"].push_back({{"d", r.task.d},
                                   {"rounds", r.task.rounds},
                                   {"basis", std::string(1, r.task.basis)},
                                   {"p", r.task.p},
                                   {"q", r.qubits},
                                   {"x", pt.x},
                                   {"shots", r.shots},
                                   {"errors", r.errors},
                                   {"fit_shots", c.shots},
                                   {"fit_errors", c.errors},
                                   {"used", used}});
            points.push_back(pt);
        }
        try {
            FitGrid grid_used;
            LineFit f = fit_line(points, grid_used, ratio);
            g["mle"] = {{"m", f.m}, {"b", f.b}, {"log_likelihood", f.max_log_likelihood}};
            g["region_size"] = f.region.size();
            double x_max = 0;
            for (const auto &pt : points) {
                x_max = std::max(x_max, pt.x);
            }
            double x_end = std::max(x_max, 1.0);
            if (f.m < 0) {
                x_end = std::max(x_end, (std::log(target) - f.b) / f.m);
            }
            std::vector<double> xs;
            for (size_t k = 0; k < envelope_points; k++) {
                xs.push_back(x_end * (double)k / (double)std::max<size_t>(1, envelope_points - 1));
            }
            nlohmann::json env = nlohmann::json::array();
            auto e = region_envelope(f, xs);
            for (size_t k = 0; k < xs.size(); k++) {
                env.push_back({{"x", xs[k]}, {"y_low", e[k].first}, {"y_high", e[k].second}});
            }
            g["envelope"] = env;
            try {
                InterceptRange r = teraquop_intercept(f, target);
                auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json("inf"); };
                g["intercept"] = {{"q_low", num(r.low)}, {"q_mle", num(r.mle)}, {"q_high", num(r.high)}};
            } catch (const std::domain_error &e) {
                g["intercept_error"] = e.what();
            }
        } catch (const std::invalid_argument &e) {
            g["fit_error"] = e.what();
        }
        out["groups"].push_back(g);
    }
    return out;
}

std::string format_q(const nlohmann::json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v.get<double>());
    return buf;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Pentagonal pair-measurement surface code toolkit", "pqec"};
    app.set_version_flag("--version", build_identifier());
    app.set_config("--config", "", "Key-value config file; sections name subcommands")->check(CLI::ExistingFile);
    app.require_subcommand(1);
    uint64_t seed = 0;

    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "Random seed")->capture_default_str();
        sub->fallthrough();
    };

    int d = 0, rounds = 0;
    std::string basis = "X", construction = "pentagon", out_path = "-";
    auto *gen = app.add_subcommand("gen", "Generate a noiseless memory circuit");
    gen->add_option("--d", d, "Patch width (odd, at least 3)")->required();
    gen->add_option("--rounds", rounds, "Rounds (default: d)");
    gen->add_option("--basis", basis, "Memory basis")->check(CLI::IsMember({"X", "Z"}))->capture_default_str();
    gen->add_option("--construction", construction)->capture_default_str();
    gen->add_option("--out", out_path, "Output file, - for stdout")->capture_default_str();
    add_seed(gen);

    std::string in_path;
    double p = 0;
    auto *noisy = app.add_subcommand("noisify", "Add pair-measurement depolarizing noise");
    noisy->add_option("--in", in_path, "Circuit file")->required();
    noisy->add_option("--p", p, "Physical error rate")->required();
    noisy->add_option("--out", out_path)->capture_default_str();
    add_seed(noisy);

    std::string circuit_path;
    size_t shots = 1000;
    auto *sample = app.add_subcommand("sample", "Sample detection events and observable flips");
    sample->add_option("--circuit", circuit_path)->required();
    sample->add_option("--shots", shots)->capture_default_str();
    sample->add_option("--out", out_path, "Binary detection data file")->required();
    add_seed(sample);

    auto *dem_cmd = app.add_subcommand("dem", "Extract the detector error model of a noisy circuit");
    bool decompose = false;
    dem_cmd->add_option("--circuit", circuit_path)->required();
    dem_cmd->add_option("--out", out_path)->capture_default_str();
    dem_cmd->add_flag("--decompose", decompose, "Split hyperedges into graphlike components");
    add_seed(dem_cmd);

    std::string dem_path, events_path;
    auto *decode = app.add_subcommand("decode", "Predict observable flips with matching");
    decode->add_option("--dem", dem_path)->required();
    decode->add_option("--events", events_path)->required();
    decode->add_option("--out", out_path, "One line of observable bits per shot")->capture_default_str();
    add_seed(decode);

    auto *distance = app.add_subcommand("distance", "Fewest faults flipping an observable silently");
    distance->add_option("--dem", dem_path);
    distance->add_option("--circuit", circuit_path, "Noisy circuit, instead of --dem");
    add_seed(distance);

    Campaign campaign;
    auto *collect_cmd = app.add_subcommand("collect", "Monte Carlo campaign; appends to a statistics CSV");
    collect_cmd->add_option("--tasks", campaign.tasks_path, "Task CSV (construction,basis,d,rounds,p)");
    collect_cmd->add_option("--constructions", campaign.constructions)->delimiter(',');
    collect_cmd->add_option("--widths", campaign.widths)->delimiter(',');
    collect_cmd->add_option("--error-rates", campaign.error_rates)->delimiter(',');
    collect_cmd->add_option("--bases", campaign.bases)->delimiter(',');
    collect_cmd->add_option("--rounds", campaign.rounds, "'d' or a fixed count")->capture_default_str();
    collect_cmd->add_option("--out", campaign.out, "Statistics CSV")->required();
    collect_cmd->add_option("--max-shots", campaign.max_shots)->capture_default_str();
    collect_cmd->add_option("--max-errors", campaign.max_errors)->capture_default_str();
    collect_cmd->add_option("--workers", campaign.workers)->capture_default_str();
    collect_cmd->add_option("--batch-shots", campaign.batch_shots, "Shots per batch; keep fixed when resuming")
        ->capture_default_str();
    collect_cmd->add_flag("--no-timing", campaign.no_timing, "Write 0 to the seconds column");
    add_seed(collect_cmd);

    std::string stats_path;
    std::vector<std::string> group_by{"construction", "basis", "p"};
    double ratio = 1000, target = 1e-12;
    size_t envelope_points = 50;
    auto *fit = app.add_subcommand("fit", "Fit log error rate against sqrt(qubits)");
    fit->add_option("--stats", stats_path)->required();
    fit->add_option("--group-by", group_by)->delimiter(',');
    fit->add_option("--out", out_path)->capture_default_str();
    fit->add_option("--likelihood-ratio", ratio)->capture_default_str();
    fit->add_option("--target", target, "Per-shot logical error rate")->capture_default_str();
    fit->add_option("--envelope-points", envelope_points)->capture_default_str();
    add_seed(fit);

    std::string fit_path;
    auto *footprint = app.add_subcommand("footprint", "Teraquop footprints from a fit");
    footprint->add_option("--fit", fit_path, "JSON written by fit")->required();
    footprint->add_option("--out", out_path)->capture_default_str();
    add_seed(footprint);

    auto *verify = app.add_subcommand("verify", "Check the parity gadget's stabilizer flows");
    int verify_d = 0;
    verify->add_option("--d", verify_d, "Also check determinism of the width-d memory circuits");
    add_seed(verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            if (d < 3 || d % 2 == 0) {
                throw UsageError("width must be odd and at least 3, got " + std::to_string(d));
            }
            int r = rounds ? rounds : d;
            Circuit c = generate_memory_circuit(d, r, basis[0], construction);
            std::string text = header_comment("gen --d " + std::to_string(d) + " --rounds " + std::to_string(r) +
                                              " --basis " + basis + " --construction " + construction) +
                               serialize_text(c);
            write_file(out_path, text, out);
        } else if (*noisy) {
            Circuit c = parse_text(read_file(in_path));
            if (!(p >= 0 && p <= 1)) {
                throw UsageError("--p must be in [0, 1]");
            }
            write_file(out_path, header_comment("noisify --p " + format_double(p)) + serialize_text(noisify(c, p)),
                       out);
        } else if (*sample) {
            FrameSampler sampler(parse_text(read_file(circuit_path)));
            DetectionData data = sampler.sample(shots, seed);
            std::ostringstream buf;
            write_detection_data(buf, data);
            write_file(out_path, buf.str(), out);
        } else if (*dem_cmd) {
            DetectorErrorModel dem = extract_error_model(parse_text(read_file(circuit_path)));
            if (decompose) {
                decompose_hyperedges(dem);
            }
            write_file(out_path, header_comment("dem") + dem_to_text(dem), out);
        } else if (*decode) {
            DetectorErrorModel dem = load_dem(dem_path);
            std::istringstream events(read_file(events_path));
            DetectionData data = read_detection_data(events);
            if (data.num_detectors != dem.num_detectors) {
                throw std::runtime_error("events have " + std::to_string(data.num_detectors) +
                                         " detectors but the error model has " + std::to_string(dem.num_detectors));
            }
            MatchingGraph graph(dem);
            if (graph.num_clamped()) {
                err << "warning: " << graph.num_clamped() << " edge probabilities clamped below 1/2\n";
            }
            Decoder decoder(graph);
            std::string text;
            size_t errors = 0;
            for (size_t s = 0; s < data.shots; s++) {
                uint64_t pred = decoder.predict(data, s);
                errors += data.num_observables && pred != data.observable_mask(s);
                for (size_t k = 0; k < dem.num_observables; k++) {
                    text += (pred >> k) & 1 ? '1' : '0';
                }
                text += '\n';
            }
            write_file(out_path, text, out);
            if (out_path != "-") {
                out << "logical errors " << errors << " of " << data.shots << " shots\n";
            }
        } else if (*distance) {
            if (dem_path.empty() == circuit_path.empty()) {
                throw UsageError("distance needs exactly one of --dem and --circuit");
            }
            DetectorErrorModel dem = dem_path.empty() ? decomposed(parse_text(read_file(circuit_path))) : load_dem(dem_path);
            out << estimate_circuit_distance(dem) << "\n";
        } else if (*collect_cmd) {
            campaign.seed = seed;
            std::vector<Task> tasks = campaign.tasks();
            std::vector<StatsRow> existing;
            bool fresh = !std::filesystem::exists(campaign.out);
            if (!fresh) {
                existing = parse_stats_csv(read_file(campaign.out));
            }
            std::ofstream table(campaign.out, std::ios::app);
            if (!table) {
                throw std::runtime_error("cannot write '" + campaign.out + "'");
            }
            if (fresh) {
                table << header_comment("collect") << STATS_HEADER << "\n";
            }
            CollectOptions opt;
            opt.max_shots = campaign.max_shots;
            opt.max_errors = campaign.max_errors;
            opt.seed = campaign.seed;
            opt.workers = campaign.workers;
            opt.batch_shots = campaign.batch_shots;
            size_t finished = 0;
            opt.on_row = [&](const StatsRow &row) {
                StatsRow r = row;
                if (campaign.no_timing) {
                    r.seconds = 0;
                }
                table << format_stats_row(r) << "\n" << std::flush;
                err << "[" << ++finished << "] " << row.task.key() << " shots=" << row.shots
                    << " errors=" << row.errors << "\n";
            };
            CollectResult res = collect(tasks, existing, opt);
            for (const auto &f : res.failures) {
                err << "task " << f.task.key() << " failed: " << f.message << "\n";
            }
            if (!res.failures.empty()) {
                return 1;
            }
        } else if (*fit) {
            std::vector<StatsRow> rows = parse_stats_csv(read_file(stats_path));
            nlohmann::json j = fit_groups(rows, group_by, ratio, target, envelope_points);
            write_file(out_path, j.dump(2) + "\n", out);
        } else if (*footprint) {
            nlohmann::json j = nlohmann::json::parse(read_file(fit_path));
            std::string text = header_comment("footprint target " + format_double(j.at("target").get<double>())) +
                               "construction,basis,p,q_low,q_mle,q_high\n";
            for (const auto &g : j.at("groups")) {
                if (!g.contains("intercept")) {
                    err << "no footprint for " << g.at("construction").get<std::string>() << ","
                        << g.at("basis").get<std::string>() << ": "
                        << (g.contains("intercept_error") ? g["intercept_error"].get<std::string>() : g.value("fit_error", std::string("no fit")))
                        << "\n";
                    continue;
                }
                const auto &p_json = g.at("p");
                std::string p_text = p_json.is_string() ? p_json.get<std::string>() : format_double(p_json.get<double>());
                const auto &ic = g.at("intercept");
                text += g.at("construction").get<std::string>() + "," + g.at("basis").get<std::string>() + "," + p_text +
                        "," + format_q(ic.at("q_low")) + "," + format_q(ic.at("q_mle")) + "," + format_q(ic.at("q_high")) +
                        "\n";
            }
            write_file(out_path, text, out);
        } else if (*verify) {
            GadgetReport report = verify_parity_gadget();
            for (const auto *list : {&report.x_gadget, &report.z_gadget}) {
                for (const auto &r : *list) {
                    out << (r.check.ok ? "pass " : "FAIL ") << (list == &report.x_gadget ? "X " : "Z ") << r.name;
                    if (!r.check.ok) {
                        out << ": " << r.check.failure;
                    }
                    out << "\n";
                }
            }
            out << report.num_passed() << "/" << report.num_total() << " flows pass\n";
            bool ok = report.all_passed();
            if (verify_d) {
                for (char b : {'X', 'Z'}) {
                    DeterminismReport det = check_determinism(generate_memory_circuit(verify_d, verify_d, b));
                    out << "memory " << b << " d=" << verify_d << ": "
                        << (det.ok() ? "all detectors and observables deterministic" : "NONDETERMINISTIC") << "\n";
                    ok &= det.ok();
                }
            }
            return ok ? 0 : 1;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace pqec
