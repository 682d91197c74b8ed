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

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace pqec {

namespace {

constexpr std::array<GateInfo, 18> GATE_TABLE{{
    {"RX", true, false, false, false, false},
    {"RY", true, false, false, false, false},
    {"RZ", true, false, false, false, false},
    {"MX", false, true, false, false, false},
    {"MY", false, true, false, false, false},
    {"MZ", false, true, false, false, false},
    {"MXX", false, true, true, false, false},
    {"MYY", false, true, true, false, false},
    {"MZZ", false, true, true, false, false},
    {"TICK", false, false, false, false, false},
    {"DEP1", false, false, false, true, false},
    {"DEP2", false, false, true, true, false},
    {"XERR", false, false, false, true, false},
    {"ZERR", false, false, false, true, false},
    {"DETECTOR", false, false, false, false, true},
    {"OBSERVABLE_INCLUDE", false, false, false, false, true},
    {"QUBIT_COORDS", false, false, false, false, true},
    {"REPEAT", false, false, false, false, false},
}};

bool is_record_gate(Gate g) {
    return g == Gate::DETECTOR || g == Gate::OBSERVABLE_INCLUDE;
}

size_t records_produced(const Instruction &inst) {
    const GateInfo &info = gate_info(inst.gate);
    if (!info.is_measurement) {
        return 0;
    }
    return info.is_pair ? inst.targets.size() / 2 : inst.targets.size();
}

std::string loc(const std::string &prefix, size_t k) {
    return prefix.empty() ? std::to_string(k) : prefix + "/" + std::to_string(k);
}

struct Validator {
    std::vector<Diagnostic> diags;
    std::vector<bool> used;

    void mark(uint32_t q) {
        if (q >= used.size()) {
            used.resize(q + 1, false);
        }
        used[q] = true;
    }

    void add(const std::string &where, std::string rule) {
        diags.push_back(Diagnostic{where, std::move(rule)});
    }

    /// Returns the record count after one pass over `circuit`, starting at `records`.
    uint64_t run(const Circuit &circuit, const std::string &prefix, uint64_t records) {
        for (size_t k = 0; k < circuit.instructions.size(); k++) {
            const Instruction &inst = circuit.instructions[k];
            std::string where = loc(prefix, k);
            if (inst.gate == Gate::REPEAT) {
                if (inst.block >= circuit.blocks.size()) {
                    add(where, "repeat block index out of range");
                    continue;
                }
                if (inst.repeat_count == 0) {
                    add(where, "repeat count must be positive");
                }
                const Circuit &body = circuit.blocks[inst.block];
                uint64_t after_one = run(body, where, records);
                uint64_t per = after_one - records;
                records += per * std::max<uint64_t>(inst.repeat_count, 1);
                continue;
            }
            check(inst, where, records);
            records += records_produced(inst);
        }
        return records;
    }

    void check(const Instruction &inst, const std::string &where, uint64_t records) {
        const GateInfo &info = gate_info(inst.gate);
        bool wants_records = is_record_gate(inst.gate);
        for (const Target &t : inst.targets) {
            if (t.is_record != wants_records) {
                add(where, wants_records ? "annotation target must be a record reference"
                                         : "gate target must be a qubit");
            } else if (t.is_record) {
                if (t.value == 0 || t.value > records) {
                    add(where, "unresolvable record reference");
                }
            } else {
                mark(t.value);
            }
        }

        auto probability_ok = [](double p) { return p >= 0 && p <= 1; };
        if (inst.gate == Gate::TICK) {
            if (!inst.targets.empty() || !inst.args.empty()) {
                add(where, "TICK takes no arguments or targets");
            }
        } else if (info.is_reset) {
            if (!inst.args.empty()) {
                add(where, "reset takes no arguments");
            }
        } else if (info.is_measurement) {
            if (inst.args.size() > 1) {
                add(where, "measurement takes at most one flip probability");
            } else if (inst.args.size() == 1 && !probability_ok(inst.args[0])) {
                add(where, "probability out of range");
            }
        } else if (info.is_noise) {
            if (inst.args.size() != 1) {
                add(where, "noise channel takes exactly one probability");
            } else if (!probability_ok(inst.args[0])) {
                add(where, "probability out of range");
            }
        } else if (inst.gate == Gate::OBSERVABLE_INCLUDE) {
            if (inst.args.size() != 1 || inst.args[0] < 0 || inst.args[0] != std::floor(inst.args[0])) {
                add(where, "observable index must be a single non-negative integer");
            }
        }
        if ((info.is_reset || info.is_measurement || info.is_noise) && inst.targets.empty()) {
            add(where, "gate has no targets");
        }

        if (info.is_pair) {
            if (inst.targets.size() % 2 != 0) {
                add(where, "odd number of targets in pair op");
            }
            std::set<uint32_t> seen;
            for (const Target &t : inst.targets) {
                if (!t.is_record && !seen.insert(t.value).second) {
                    add(where, "repeated qubit in pair op");
                    break;
                }
            }
        }
    }
};

void unroll_into(const Circuit &circuit, Circuit &out) {
    for (const Instruction &inst : circuit.instructions) {
        if (inst.gate == Gate::REPEAT) {
            for (uint64_t r = 0; r < inst.repeat_count; r++) {
                unroll_into(circuit.blocks[inst.block], out);
            }
        } else {
            out.instructions.push_back(inst);
        }
    }
}

void serialize_into(const Circuit &circuit, std::string &out, size_t indent) {
    for (const Instruction &inst : circuit.instructions) {
        out.append(indent, ' ');
        if (inst.gate == Gate::REPEAT) {
            out += "REPEAT ";
            out += std::to_string(inst.repeat_count);
            out += " {\n";
            serialize_into(circuit.blocks[inst.block], out, indent + 4);
            out.append(indent, ' ');
            out += "}\n";
            continue;
        }
        out += gate_info(inst.gate).name;
        if (!inst.args.empty()) {
            out += '(';
            for (size_t k = 0; k < inst.args.size(); k++) {
                if (k) {
                    out += ", ";
                }
                out += format_double(inst.args[k]);
            }
            out += ')';
        }
        for (const Target &t : inst.targets) {
            out += ' ';
            if (t.is_record) {
                out += "rec[-";
                out += std::to_string(t.value);
                out += ']';
            } else {
                out += std::to_string(t.value);
            }
        }
        out += '\n';
    }
}

template <typename F>
void for_each_flat(const Circuit &circuit, uint64_t multiplier, F &&f) {
    for (const Instruction &inst : circuit.instructions) {
        if (inst.gate == Gate::REPEAT) {
            for_each_flat(circuit.blocks[inst.block], multiplier * inst.repeat_count, f);
        } else {
            f(inst, multiplier);
        }
    }
}

}  // namespace

const GateInfo &gate_info(Gate gate) {
    return GATE_TABLE[static_cast<size_t>(gate)];
}

Gate gate_from_name(std::string_view name) {
    for (size_t k = 0; k < GATE_TABLE.size(); k++) {
        if (GATE_TABLE[k].name == name) {
            return static_cast<Gate>(k);
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

char gate_basis(Gate gate) {
    switch (gate) {
        case Gate::RX:
        case Gate::MX:
        case Gate::MXX:
            return 'X';
        case Gate::RY:
        case Gate::MY:
        case Gate::MYY:
            return 'Y';
        case Gate::RZ:
        case Gate::MZ:
        case Gate::MZZ:
            return 'Z';
        default:
            throw std::invalid_argument("gate has no Pauli basis");
    }
}

bool Circuit::operator==(const Circuit &other) const {
    return instructions == other.instructions && blocks == other.blocks;
}

size_t Circuit::num_qubits() const {
    size_t n = 0;
    for_each_flat(*this, 1, [&](const Instruction &inst, uint64_t) {
        for (const Target &t : inst.targets) {
            if (!t.is_record) {
                n = std::max<size_t>(n, t.value + 1);
            }
        }
    });
    return n;
}

size_t Circuit::num_measurements() const {
    size_t n = 0;
    for_each_flat(*this, 1, [&](const Instruction &inst, uint64_t mul) { n += records_produced(inst) * mul; });
    return n;
}

size_t Circuit::num_detectors() const {
    size_t n = 0;
    for_each_flat(*this, 1, [&](const Instruction &inst, uint64_t mul) {
        if (inst.gate == Gate::DETECTOR) {
            n += mul;
        }
    });
    return n;
}

size_t Circuit::num_observables() const {
    size_t n = 0;
    for_each_flat(*this, 1, [&](const Instruction &inst, uint64_t) {
        if (inst.gate == Gate::OBSERVABLE_INCLUDE && !inst.args.empty()) {
            n = std::max<size_t>(n, (size_t)inst.args[0] + 1);
        }
    });
    return n;
}

size_t Circuit::num_ticks() const {
    size_t n = 0;
    for_each_flat(*this, 1, [&](const Instruction &inst, uint64_t mul) {
        if (inst.gate == Gate::TICK) {
            n += mul;
        }
    });
    return n;
}

bool Circuit::has_noise() const {
    bool found = false;
    for_each_flat(*this, 1, [&](const Instruction &inst, uint64_t) {
        const GateInfo &info = gate_info(inst.gate);
        if (info.is_noise || (info.is_measurement && !inst.args.empty())) {
            found = true;
        }
    });
    return found;
}

void Circuit::append(Gate gate, const std::vector<uint32_t> &qubits, const std::vector<double> &args) {
    Instruction inst;
    inst.gate = gate;
    inst.args = args;
    for (uint32_t q : qubits) {
        inst.targets.push_back(Target::qubit(q));
    }
    instructions.push_back(std::move(inst));
}

void Circuit::append_records(Gate gate, const std::vector<uint32_t> &lookbacks, const std::vector<double> &args) {
    Instruction inst;
    inst.gate = gate;
    inst.args = args;
    for (uint32_t k : lookbacks) {
        inst.targets.push_back(Target::rec(k));
    }
    instructions.push_back(std::move(inst));
}

void Circuit::append_tick() {
    instructions.push_back(Instruction{Gate::TICK, {}, {}, 0, 0});
}

void Circuit::append_repeat(uint64_t count, Circuit body) {
    Instruction inst;
    inst.gate = Gate::REPEAT;
    inst.repeat_count = count;
    inst.block = (uint32_t)blocks.size();
    blocks.push_back(std::move(body));
    instructions.push_back(std::move(inst));
}

void Circuit::append_circuit(const Circuit &other) {
    for (const Instruction &inst : other.instructions) {
        if (inst.gate == Gate::REPEAT) {
            append_repeat(inst.repeat_count, other.blocks[inst.block]);
        } else {
            instructions.push_back(inst);
        }
    }
}

std::vector<Diagnostic> validate(const Circuit &circuit) {
    Validator v;
    v.run(circuit, "", 0);
    for (size_t q = 0; q < v.used.size(); q++) {
        if (!v.used[q]) {
            v.add("", "qubit indices not dense: qubit " + std::to_string(q) + " unused");
        }
    }
    return v.diags;
}

Circuit unroll(const Circuit &circuit) {
    auto diags = validate(circuit);
    if (!diags.empty()) {
        throw std::invalid_argument("cannot unroll invalid circuit: " + diags[0].rule + " at " + diags[0].location);
    }
    Circuit out;
    unroll_into(circuit, out);
    return out;
}

ParseError::ParseError(size_t line, size_t column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line(line),
      column(column) {
}

namespace {

struct LineCursor {
    std::string_view text;
    size_t pos = 0;
    size_t line_no;

    [[noreturn]] void fail(const std::string &message) const {
        throw ParseError(line_no, pos + 1, message);
    }
    void skip_space() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) {
            pos++;
        }
    }
    bool done() {
        skip_space();
        return pos >= text.size();
    }
    bool peek(char c) {
        return pos < text.size() && text[pos] == c;
    }
    void expect(char c) {
        if (!peek(c)) {
            fail(std::string("expected '") + c + "'");
        }
        pos++;
    }
    std::string_view word() {
        size_t start = pos;
        while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '_')) {
            pos++;
        }
        if (start == pos) {
            fail("expected a name");
        }
        return text.substr(start, pos - start);
    }
    uint64_t integer() {
        uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc() || ptr == text.data() + pos) {
            fail("expected a non-negative integer");
        }
        pos = ptr - text.data();
        return value;
    }
    double number() {
        skip_space();
        double value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc() || ptr == text.data() + pos) {
            fail("expected a number");
        }
        pos = ptr - text.data();
        skip_space();
        return value;
    }
};

}  // namespace

Circuit parse_text(std::string_view text) {
    std::vector<Circuit> stack(1);
    std::vector<uint64_t> repeat_counts;
    std::vector<size_t> open_lines;
    size_t line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        LineCursor cur{line, 0, line_no};
        if (cur.done()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        if (cur.peek('}')) {
            cur.pos++;
            if (!cur.done()) {
                cur.fail("unexpected text after '}'");
            }
            if (stack.size() == 1) {
                cur.fail("unmatched '}'");
            }
            Circuit body = std::move(stack.back());
            stack.pop_back();
            stack.back().append_repeat(repeat_counts.back(), std::move(body));
            repeat_counts.pop_back();
            open_lines.pop_back();
        } else {
            size_t name_col = cur.pos;
            std::string name(cur.word());
            std::transform(name.begin(), name.end(), name.begin(), ::toupper);
            if (name == "REPEAT") {
                cur.skip_space();
                uint64_t count = cur.integer();
                cur.skip_space();
                cur.expect('{');
                if (!cur.done()) {
                    cur.fail("unexpected text after '{'");
                }
                repeat_counts.push_back(count);
                open_lines.push_back(line_no);
                stack.emplace_back();
            } else {
                Instruction inst;
                try {
                    inst.gate = gate_from_name(name);
                } catch (const std::invalid_argument &) {
                    throw ParseError(line_no, name_col + 1, "unknown gate '" + name + "'");
                }
                if (cur.peek('(')) {
                    cur.pos++;
                    cur.skip_space();
                    if (!cur.peek(')')) {
                        while (true) {
                            inst.args.push_back(cur.number());
                            if (cur.peek(',')) {
                                cur.pos++;
                                continue;
                            }
                            break;
                        }
                    }
                    cur.expect(')');
                }
                while (!cur.done()) {
                    if (cur.peek('r') || cur.peek('R')) {
                        std::string_view w = cur.word();
                        if (w != "rec") {
                            cur.fail("expected 'rec[-k]'");
                        }
                        cur.expect('[');
                        cur.expect('-');
                        uint64_t k = cur.integer();
                        cur.expect(']');
                        if (k == 0 || k > UINT32_MAX) {
                            cur.fail("record lookback out of range");
                        }
                        inst.targets.push_back(Target::rec((uint32_t)k));
                    } else {
                        uint64_t q = cur.integer();
                        if (q > UINT32_MAX) {
                            cur.fail("qubit index out of range");
                        }
                        inst.targets.push_back(Target::qubit((uint32_t)q));
                    }
                    if (cur.pos < line.size() && !(line[cur.pos] == ' ' || line[cur.pos] == '\t' || line[cur.pos] == '\r')) {
                        cur.fail("expected whitespace between targets");
                    }
                }
                stack.back().instructions.push_back(std::move(inst));
            }
        }
        if (end == text.size()) {
            break;
        }
    }
    if (stack.size() != 1) {
        throw ParseError(open_lines.back(), 1, "unterminated REPEAT block");
    }
    return std::move(stack[0]);
}

std::string serialize_text(const Circuit &circuit) {
    std::string out;
    serialize_into(circuit, out, 0);
    return out;
}

ResolvedAnnotations resolve_annotations(const Circuit &circuit) {
    ResolvedAnnotations out;
    auto normalize = [](std::vector<uint32_t> &v) {
        std::sort(v.begin(), v.end());
        std::vector<uint32_t> kept;
        for (size_t k = 0; k < v.size();) {
            size_t j = k;
            while (j < v.size() && v[j] == v[k]) {
                j++;
            }
            if ((j - k) & 1) {
                kept.push_back(v[k]);
            }
            k = j;
        }
        v = std::move(kept);
    };
    uint64_t records = 0;
    std::vector<std::vector<uint32_t>> obs_raw;
    auto visit = [&](auto &self, const Circuit &c) -> void {
        for (const Instruction &inst : c.instructions) {
            if (inst.gate == Gate::REPEAT) {
                for (uint64_t r = 0; r < inst.repeat_count; r++) {
                    self(self, c.blocks[inst.block]);
                }
                continue;
            }
            if (inst.gate == Gate::DETECTOR || inst.gate == Gate::OBSERVABLE_INCLUDE) {
                std::vector<uint32_t> ms;
                for (const Target &t : inst.targets) {
                    if (!t.is_record || t.value == 0 || t.value > records) {
                        throw std::invalid_argument("unresolvable record reference");
                    }
                    ms.push_back((uint32_t)(records - t.value));
                }
                if (inst.gate == Gate::DETECTOR) {
                    normalize(ms);
                    out.detectors.push_back(std::move(ms));
                    out.detector_coords.push_back(inst.args);
                } else {
                    size_t k = (size_t)inst.args.at(0);
                    if (obs_raw.size() <= k) {
                        obs_raw.resize(k + 1);
                    }
                    obs_raw[k].insert(obs_raw[k].end(), ms.begin(), ms.end());
                }
            }
            records += records_produced(inst);
        }
    };
    visit(visit, circuit);
    for (auto &o : obs_raw) {
        normalize(o);
    }
    out.observables = std::move(obs_raw);
    out.num_measurements = records;
    return out;
}

std::string format_double(double value) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

}  // namespace pqec
