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

#include "pqec/frame_sampler.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pqec {

DetectionData::DetectionData(size_t shots, size_t num_detectors, size_t num_observables)
    : shots(shots),
      num_detectors(num_detectors),
      num_observables(num_observables),
      detector_bits(shots * ((num_detectors + 7) / 8), 0),
      observable_bits(shots * ((num_observables + 7) / 8), 0) {
}

void DetectionData::set_detector(size_t shot, size_t k, bool v) {
    uint8_t &byte = detector_bits[shot * detector_stride() + k / 8];
    byte = (uint8_t)((byte & ~(1 << (k % 8))) | (v << (k % 8)));
}

void DetectionData::set_observable(size_t shot, size_t k, bool v) {
    uint8_t &byte = observable_bits[shot * observable_stride() + k / 8];
    byte = (uint8_t)((byte & ~(1 << (k % 8))) | (v << (k % 8)));
}

std::vector<uint32_t> DetectionData::fired(size_t shot) const {
    std::vector<uint32_t> out;
    size_t stride = detector_stride();
    const uint8_t *row = detector_bits.data() + shot * stride;
    for (size_t b = 0; b < stride; b++) {
        uint8_t v = row[b];
        while (v) {
            out.push_back((uint32_t)(b * 8 + std::countr_zero(v)));
            v &= v - 1;
        }
    }
    return out;
}

uint64_t DetectionData::observable_mask(size_t shot) const {
    uint64_t mask = 0;
    for (size_t k = 0; k < num_observables && k < 64; k++) {
        mask |= (uint64_t)observable(shot, k) << k;
    }
    return mask;
}

void DetectionData::append(const DetectionData &other) {
    if (other.num_detectors != num_detectors || other.num_observables != num_observables) {
        throw std::invalid_argument("detection data shapes differ");
    }
    shots += other.shots;
    detector_bits.insert(detector_bits.end(), other.detector_bits.begin(), other.detector_bits.end());
    observable_bits.insert(observable_bits.end(), other.observable_bits.begin(), other.observable_bits.end());
}

namespace {

void write_u64(std::ostream &out, uint64_t v) {
    char bytes[8];
    for (int k = 0; k < 8; k++) {
        bytes[k] = (char)((v >> (8 * k)) & 0xFF);
    }
    out.write(bytes, 8);
}

uint64_t read_u64(std::istream &in) {
    unsigned char bytes[8];
    if (!in.read((char *)bytes, 8)) {
        throw std::runtime_error("truncated detection data header");
    }
    uint64_t v = 0;
    for (int k = 0; k < 8; k++) {
        v |= (uint64_t)bytes[k] << (8 * k);
    }
    return v;
}

}  // namespace

void write_detection_data(std::ostream &out, const DetectionData &data) {
    write_u64(out, data.shots);
    write_u64(out, data.num_detectors);
    write_u64(out, data.num_observables);
    size_t ds = data.detector_stride(), os = data.observable_stride();
    for (size_t s = 0; s < data.shots; s++) {
        out.write((const char *)data.detector_bits.data() + s * ds, (std::streamsize)ds);
        out.write((const char *)data.observable_bits.data() + s * os, (std::streamsize)os);
    }
}

DetectionData read_detection_data(std::istream &in) {
    uint64_t shots = read_u64(in);
    uint64_t dets = read_u64(in);
    uint64_t obs = read_u64(in);
    if (dets > (uint64_t{1} << 32) || obs > (uint64_t{1} << 32) || shots > (uint64_t{1} << 40)) {
        throw std::runtime_error("implausible detection data header");
    }
    DetectionData data(0, dets, obs);
    size_t ds = data.detector_stride(), os = data.observable_stride();
    std::vector<char> row(ds + os);
    for (uint64_t s = 0; s < shots; s++) {
        if (!in.read(row.data(), (std::streamsize)row.size())) {
            throw std::runtime_error("truncated detection data at shot " + std::to_string(s));
        }
        data.detector_bits.insert(data.detector_bits.end(), row.begin(), row.begin() + ds);
        data.observable_bits.insert(data.observable_bits.end(), row.begin() + ds, row.end());
    }
    data.shots = shots;
    return data;
}

FrameSampler::FrameSampler(const Circuit &circuit) {
    Circuit flat = unroll(circuit);
    num_qubits_ = flat.num_qubits();
    ResolvedAnnotations ann = resolve_annotations(flat);
    detectors_ = ann.detectors;
    observables_ = ann.observables;
    uint32_t measurement = 0;
    uint32_t op_index = 0;
    for (const Instruction &inst : flat.instructions) {
        const GateInfo &info = gate_info(inst.gate);
        if (info.is_annotation || inst.gate == Gate::TICK) {
            continue;
        }
        Op op;
        op.gate = inst.gate;
        for (const Target &t : inst.targets) {
            op.targets.push_back(t.value);
        }
        op.probability = inst.args.empty() ? 0 : inst.args[0];
        op.first_measurement = measurement;
        op.first_site = (uint32_t)sites_.size();
        size_t step = info.is_pair ? 2 : 1;
        if (info.is_noise || (info.is_measurement && op.probability > 0)) {
            for (size_t k = 0; k < op.targets.size(); k += step) {
                NoiseSite site;
                site.op = op_index;
                site.gate = op.gate;
                site.probability = op.probability;
                site.qubits.assign(op.targets.begin() + k, op.targets.begin() + k + step);
                site.measurement = measurement + (uint32_t)(k / step);
                sites_.push_back(std::move(site));
            }
        }
        if (info.is_measurement) {
            measurement += (uint32_t)(op.targets.size() / step);
        }
        ops_.push_back(std::move(op));
        op_index++;
    }
    num_measurements_ = measurement;
}

template <typename NoiseHook>
void FrameSampler::run(size_t words, std::mt19937_64 &rng, std::vector<uint64_t> &flips, NoiseHook &&hook) const {
    std::vector<uint64_t> xs(num_qubits_ * words, 0), zs(num_qubits_ * words, 0);
    flips.assign(num_measurements_ * words, 0);
    for (size_t i = 0; i < ops_.size(); i++) {
        const Op &op = ops_[i];
        const auto &t = op.targets;
        uint32_t m = op.first_measurement;
        switch (op.gate) {
            case Gate::RX:
            case Gate::RY:
            case Gate::RZ:
                for (uint32_t q : t) {
                    uint64_t *x = &xs[q * words], *z = &zs[q * words];
                    for (size_t w = 0; w < words; w++) {
                        uint64_t r = rng();
                        x[w] = op.gate == Gate::RZ ? 0 : r;
                        z[w] = op.gate == Gate::RX ? 0 : r;
                    }
                }
                break;
            case Gate::MX:
            case Gate::MY:
            case Gate::MZ: {
                bool use_x = op.gate != Gate::MX, use_z = op.gate != Gate::MZ;
                for (uint32_t q : t) {
                    uint64_t *x = &xs[q * words], *z = &zs[q * words], *f = &flips[(size_t)m * words];
                    for (size_t w = 0; w < words; w++) {
                        f[w] = (use_x ? x[w] : 0) ^ (use_z ? z[w] : 0);
                        uint64_t r = rng();
                        // Randomize the component that is the measured observable.
                        if (op.gate != Gate::MZ) {
                            x[w] ^= r;
                        }
                        if (op.gate != Gate::MX) {
                            z[w] ^= r;
                        }
                    }
                    m++;
                }
                break;
            }
            case Gate::MXX:
            case Gate::MYY:
            case Gate::MZZ: {
                bool use_x = op.gate != Gate::MXX, use_z = op.gate != Gate::MZZ;
                for (size_t k = 0; k + 1 < t.size(); k += 2) {
                    uint64_t *xa = &xs[t[k] * words], *za = &zs[t[k] * words];
                    uint64_t *xb = &xs[t[k + 1] * words], *zb = &zs[t[k + 1] * words];
                    uint64_t *f = &flips[(size_t)m * words];
                    for (size_t w = 0; w < words; w++) {
                        f[w] = (use_x ? xa[w] ^ xb[w] : 0) ^ (use_z ? za[w] ^ zb[w] : 0);
                        uint64_t r = rng();
                        if (op.gate != Gate::MZZ) {
                            xa[w] ^= r;
                            xb[w] ^= r;
                        }
                        if (op.gate != Gate::MXX) {
                            za[w] ^= r;
                            zb[w] ^= r;
                        }
                    }
                    m++;
                }
                break;
            }
            default:
                break;
        }
        if (op.probability > 0 || gate_info(op.gate).is_noise) {
            hook(i, op, xs, zs, flips);
        }
    }
}

std::vector<uint64_t> FrameSampler::sample_flips(size_t words, std::mt19937_64 &rng) const {
    std::vector<uint64_t> flips;
    size_t slots = words * 64;
    run(words, rng, flips,
        [&](size_t, const Op &op, std::vector<uint64_t> &xs, std::vector<uint64_t> &zs, std::vector<uint64_t> &fl) {
            double p = op.probability;
            if (p <= 0) {
                return;
            }
            const GateInfo &info = gate_info(op.gate);
            size_t step = info.is_pair ? 2 : 1;
            size_t groups = op.targets.size() / step;
            uint64_t total = (uint64_t)groups * slots;
            double log_q = std::log1p(-p);
            auto gap = [&]() -> uint64_t {
                if (p >= 1) {
                    return 0;
                }
                double u = (double)((rng() >> 11) + 1) * 0x1.0p-53;
                double g = std::floor(std::log(u) / log_q);
                return g >= (double)total ? total : (uint64_t)g;
            };
            for (uint64_t pos = gap(); pos < total; pos += 1 + gap()) {
                size_t g = pos / slots, slot = pos % slots;
                size_t w = slot >> 6;
                uint64_t bit = uint64_t{1} << (slot & 63);
                if (info.is_measurement) {
                    fl[(op.first_measurement + g) * words + w] ^= bit;
                    continue;
                }
                uint32_t q0 = op.targets[g * step];
                switch (op.gate) {
                    case Gate::XERR:
                        xs[q0 * words + w] ^= bit;
                        break;
                    case Gate::ZERR:
                        zs[q0 * words + w] ^= bit;
                        break;
                    case Gate::DEP1: {
                        uint64_t v = 1 + rng() % 3;
                        xs[q0 * words + w] ^= (v & 1) ? bit : 0;
                        zs[q0 * words + w] ^= (v & 2) ? bit : 0;
                        break;
                    }
                    case Gate::DEP2: {
                        uint32_t q1 = op.targets[g * step + 1];
                        uint64_t v = 1 + rng() % 15;
                        xs[q0 * words + w] ^= (v & 1) ? bit : 0;
                        zs[q0 * words + w] ^= (v & 2) ? bit : 0;
                        xs[q1 * words + w] ^= (v & 4) ? bit : 0;
                        zs[q1 * words + w] ^= (v & 8) ? bit : 0;
                        break;
                    }
                    default:
                        break;
                }
            }
        });
    return flips;
}

std::vector<uint64_t> FrameSampler::propagate(const std::vector<Injection> &injections, size_t words,
                                              uint64_t gauge_seed) const {
    std::vector<std::vector<const Injection *>> by_op(ops_.size());
    for (const Injection &inj : injections) {
        by_op[sites_[inj.site].op].push_back(&inj);
    }
    std::mt19937_64 rng(gauge_seed);
    std::vector<uint64_t> flips;
    run(words, rng, flips,
        [&](size_t i, const Op &op, std::vector<uint64_t> &xs, std::vector<uint64_t> &zs, std::vector<uint64_t> &fl) {
            bool is_measurement = gate_info(op.gate).is_measurement;
            for (const Injection *inj : by_op[i]) {
                const NoiseSite &site = sites_[inj->site];
                size_t w = inj->slot >> 6;
                uint64_t bit = uint64_t{1} << (inj->slot & 63);
                if (is_measurement) {
                    fl[(size_t)site.measurement * words + w] ^= bit;
                    continue;
                }
                for (size_t k = 0; k < site.qubits.size(); k++) {
                    uint32_t q = site.qubits[k];
                    if ((inj->pauli >> (2 * k)) & 1) {
                        xs[q * words + w] ^= bit;
                    }
                    if ((inj->pauli >> (2 * k + 1)) & 1) {
                        zs[q * words + w] ^= bit;
                    }
                }
            }
        });
    return flips;
}

DetectionData FrameSampler::sample_batch(size_t shots, uint64_t seed, uint64_t batch_index) const {
    if (shots > BATCH_SHOTS) {
        throw std::invalid_argument("batch too large");
    }
    std::seed_seq seq{(uint32_t)seed, (uint32_t)(seed >> 32), (uint32_t)batch_index, (uint32_t)(batch_index >> 32)};
    std::mt19937_64 rng(seq);
    size_t words = (shots + 63) / 64;
    std::vector<uint64_t> flips = sample_flips(words, rng);

    DetectionData data(shots, detectors_.size(), observables_.size());
    std::vector<uint64_t> acc(words);
    auto scatter = [&](const std::vector<uint32_t> &ms, auto &&set) {
        std::fill(acc.begin(), acc.end(), 0);
        for (uint32_t m : ms) {
            const uint64_t *f = &flips[(size_t)m * words];
            for (size_t w = 0; w < words; w++) {
                acc[w] ^= f[w];
            }
        }
        for (size_t w = 0; w < words; w++) {
            uint64_t v = acc[w];
            while (v) {
                size_t shot = w * 64 + std::countr_zero(v);
                v &= v - 1;
                if (shot < shots) {
                    set(shot);
                }
            }
        }
    };
    for (size_t k = 0; k < detectors_.size(); k++) {
        scatter(detectors_[k], [&](size_t shot) { data.set_detector(shot, k, true); });
    }
    for (size_t k = 0; k < observables_.size(); k++) {
        scatter(observables_[k], [&](size_t shot) { data.set_observable(shot, k, true); });
    }
    return data;
}

DetectionData FrameSampler::sample(size_t shots, uint64_t seed) const {
    DetectionData out(0, detectors_.size(), observables_.size());
    for (uint64_t b = 0; b * BATCH_SHOTS < shots; b++) {
        size_t n = std::min<size_t>(BATCH_SHOTS, shots - b * BATCH_SHOTS);
        out.append(sample_batch(n, seed, b));
    }
    return out;
}

}  // namespace pqec
