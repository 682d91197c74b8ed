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

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pqec/frame_sampler.h"

namespace pqec {

Symptom &Symptom::operator^=(const Symptom &other) {
    std::vector<uint32_t> out;
    std::set_symmetric_difference(detectors.begin(), detectors.end(), other.detectors.begin(), other.detectors.end(),
                                  std::back_inserter(out));
    detectors = std::move(out);
    observables ^= other.observables;
    return *this;
}

double merge_probability(double a, double b) {
    return a * (1 - b) + b * (1 - a);
}

namespace {

struct Term {
    uint32_t site;
    uint8_t pauli;
    double probability;
};

std::string describe(const FrameSampler::NoiseSite &site, uint8_t pauli) {
    std::string s(gate_info(site.gate).name);
    if (gate_info(site.gate).is_measurement) {
        s += " flip of measurement " + std::to_string(site.measurement);
        return s;
    }
    s += " on";
    for (uint32_t q : site.qubits) {
        s += " " + std::to_string(q);
    }
    s += " term ";
    for (size_t k = 0; k < site.qubits.size(); k++) {
        int v = (pauli >> (2 * k)) & 3;
        s += "IXZY"[v];
    }
    return s;
}

}  // namespace

DetectorErrorModel extract_error_model(const Circuit &noisy_circuit) {
    FrameSampler sampler(noisy_circuit);
    const auto &sites = sampler.noise_sites();
    std::vector<Term> terms;
    for (uint32_t s = 0; s < sites.size(); s++) {
        const auto &site = sites[s];
        double p = site.probability;
        if (p <= 0) {
            continue;
        }
        switch (site.gate) {
            case Gate::DEP1:
                for (uint8_t v = 1; v < 4; v++) {
                    terms.push_back({s, v, p / 3});
                }
                break;
            case Gate::DEP2:
                for (uint8_t v = 1; v < 16; v++) {
                    terms.push_back({s, v, p / 15});
                }
                break;
            case Gate::XERR:
                terms.push_back({s, 1, p});
                break;
            case Gate::ZERR:
                terms.push_back({s, 2, p});
                break;
            default:
                terms.push_back({s, 0, p});
                break;
        }
    }

    DetectorErrorModel dem;
    dem.num_detectors = sampler.num_detectors();
    dem.num_observables = sampler.num_observables();
    if (dem.num_observables > 64) {
        throw std::invalid_argument("at most 64 observables are supported");
    }
    {
        std::vector<uint64_t> gauge = sampler.propagate({}, 1, 0x9a09e);
        auto check = [&](const std::vector<std::vector<uint32_t>> &groups, char kind) {
            for (size_t k = 0; k < groups.size(); k++) {
                uint64_t acc = 0;
                for (uint32_t m : groups[k]) {
                    acc ^= gauge[m];
                }
                if (acc) {
                    throw std::runtime_error(std::string(kind == 'D' ? "detector D" : "observable L") +
                                             std::to_string(k) + " is not deterministic");
                }
            }
        };
        check(sampler.detectors(), 'D');
        check(sampler.observables(), 'L');
    }
    std::map<Symptom, size_t> index;
    constexpr size_t CHUNK_WORDS = 256;
    constexpr size_t CHUNK = CHUNK_WORDS * 64;
    for (size_t begin = 0; begin < terms.size(); begin += CHUNK) {
        size_t end = std::min(terms.size(), begin + CHUNK);
        std::vector<FrameSampler::Injection> inj;
        for (size_t t = begin; t < end; t++) {
            inj.push_back({terms[t].site, (uint32_t)(t - begin), terms[t].pauli});
        }
        size_t words = (end - begin + 63) / 64;
        std::vector<uint64_t> flips_a = sampler.propagate(inj, words, 0x5eed0001 + begin);
        std::vector<uint64_t> flips_b = sampler.propagate(inj, words, 0x5eed1234 + begin);

        std::vector<Symptom> symptoms(end - begin);
        std::vector<uint64_t> acc_a(words), acc_b(words);
        size_t tail = (end - begin) % 64;
        uint64_t last_mask = tail ? (uint64_t{1} << tail) - 1 : ~uint64_t{0};
        auto parity = [&](const std::vector<uint32_t> &ms) {
            std::fill(acc_a.begin(), acc_a.end(), 0);
            std::fill(acc_b.begin(), acc_b.end(), 0);
            for (uint32_t m : ms) {
                for (size_t w = 0; w < words; w++) {
                    acc_a[w] ^= flips_a[(size_t)m * words + w];
                    acc_b[w] ^= flips_b[(size_t)m * words + w];
                }
            }
            acc_a[words - 1] &= last_mask;
            acc_b[words - 1] &= last_mask;
            for (size_t w = 0; w < words; w++) {
                if (acc_a[w] != acc_b[w]) {
                    size_t slot = w * 64 + std::countr_zero(acc_a[w] ^ acc_b[w]);
                    const Term &t = terms[begin + slot];
                    throw std::runtime_error("fault " + describe(sites[t.site], t.pauli) +
                                             " has a nondeterministic effect on a detector or observable");
                }
            }
        };
        for (size_t k = 0; k < sampler.detectors().size(); k++) {
            parity(sampler.detectors()[k]);
            for (size_t w = 0; w < words; w++) {
                for (uint64_t v = acc_a[w]; v; v &= v - 1) {
                    symptoms[w * 64 + std::countr_zero(v)].detectors.push_back((uint32_t)k);
                }
            }
        }
        for (size_t k = 0; k < sampler.observables().size(); k++) {
            parity(sampler.observables()[k]);
            for (size_t w = 0; w < words; w++) {
                for (uint64_t v = acc_a[w]; v; v &= v - 1) {
                    symptoms[w * 64 + std::countr_zero(v)].observables |= uint64_t{1} << k;
                }
            }
        }
        for (size_t slot = 0; slot < symptoms.size(); slot++) {
            Symptom &s = symptoms[slot];
            if (s.empty()) {
                continue;
            }
            const Term &t = terms[begin + slot];
            auto it = index.find(s);
            if (it == index.end()) {
                index.emplace(s, dem.mechanisms.size());
                dem.mechanisms.push_back({t.probability, std::move(s), {}, describe(sites[t.site], t.pauli)});
            } else {
                double &q = dem.mechanisms[it->second].probability;
                q = merge_probability(q, t.probability);
            }
        }
    }
    std::sort(dem.mechanisms.begin(), dem.mechanisms.end(),
              [](const ErrorMechanism &a, const ErrorMechanism &b) { return a.symptom < b.symptom; });
    return dem;
}

namespace {

void write_symptom(std::ostream &out, const Symptom &s) {
    bool first = true;
    for (uint32_t d : s.detectors) {
        out << (first ? "" : " ") << 'D' << d;
        first = false;
    }
    for (size_t k = 0; k < 64; k++) {
        if ((s.observables >> k) & 1) {
            out << (first ? "" : " ") << 'L' << k;
            first = false;
        }
    }
}

}  // namespace

std::string dem_to_text(const DetectorErrorModel &dem) {
    std::ostringstream out;
    out << "detectors " << dem.num_detectors << "\n";
    out << "observables " << dem.num_observables << "\n";
    for (const auto &m : dem.mechanisms) {
        out << "error(" << format_double(m.probability) << ") ";
        if (m.components.empty()) {
            write_symptom(out, m.symptom);
        } else {
            for (size_t k = 0; k < m.components.size(); k++) {
                if (k) {
                    out << " ^ ";
                }
                write_symptom(out, m.components[k]);
            }
        }
        out << "\n";
    }
    return out.str();
}

DetectorErrorModel parse_dem(std::string_view text) {
    DetectorErrorModel dem;
    size_t line_no = 0;
    size_t pos = 0;
    auto fail = [&](const std::string &msg) {
        throw std::runtime_error("error model line " + std::to_string(line_no) + ": " + msg);
    };
    auto parse_uint = [&](std::string_view tok) {
        uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            fail("bad number '" + std::string(tok) + "'");
        }
        return v;
    };
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        line_no++;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string_view> toks;
        for (size_t k = 0; k < line.size();) {
            while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
                k++;
            }
            size_t start = k;
            while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
                k++;
            }
            if (k > start) {
                toks.push_back(line.substr(start, k - start));
            }
        }
        if (toks.empty()) {
            continue;
        }
        if (toks[0] == "detectors" || toks[0] == "observables") {
            if (toks.size() != 2) {
                fail("expected one count");
            }
            (toks[0] == "detectors" ? dem.num_detectors : dem.num_observables) = parse_uint(toks[1]);
            continue;
        }
        if (toks[0].substr(0, 6) != "error(" || toks[0].back() != ')') {
            fail("expected 'error(p)'");
        }
        std::string_view ptext = toks[0].substr(6, toks[0].size() - 7);
        double p = 0;
        auto [ptr, ec] = std::from_chars(ptext.data(), ptext.data() + ptext.size(), p);
        if (ec != std::errc() || ptr != ptext.data() + ptext.size() || !(p >= 0 && p <= 1)) {
            fail("bad probability");
        }
        ErrorMechanism m;
        m.probability = p;
        std::vector<Symptom> parts(1);
        for (size_t k = 1; k < toks.size(); k++) {
            std::string_view t = toks[k];
            if (t == "^") {
                parts.emplace_back();
            } else if (t[0] == 'D') {
                uint64_t d = parse_uint(t.substr(1));
                if (d >= dem.num_detectors) {
                    fail("detector out of range");
                }
                parts.back() ^= Symptom{{(uint32_t)d}, 0};
            } else if (t[0] == 'L') {
                uint64_t o = parse_uint(t.substr(1));
                if (o >= dem.num_observables || o >= 64) {
                    fail("observable out of range");
                }
                parts.back().observables ^= uint64_t{1} << o;
            } else {
                fail("unexpected token '" + std::string(t) + "'");
            }
        }
        for (const Symptom &s : parts) {
            m.symptom ^= s;
        }
        if (parts.size() > 1) {
            m.components = std::move(parts);
        }
        dem.mechanisms.push_back(std::move(m));
    }
    return dem;
}

}  // namespace pqec
