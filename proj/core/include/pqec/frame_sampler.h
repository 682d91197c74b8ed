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

#ifndef PQEC_FRAME_SAMPLER_H
#define PQEC_FRAME_SAMPLER_H

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "pqec/circuit.h"

namespace pqec {

/// Detection events and observable flips of many shots, row-major with rows padded to whole
/// bytes (bit k of a row lives in byte k / 8 at bit position k % 8).
struct DetectionData {
    size_t shots = 0;
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<uint8_t> detector_bits;
    std::vector<uint8_t> observable_bits;

    DetectionData() = default;
    DetectionData(size_t shots, size_t num_detectors, size_t num_observables);

    size_t detector_stride() const {
        return (num_detectors + 7) / 8;
    }
    size_t observable_stride() const {
        return (num_observables + 7) / 8;
    }
    bool detector(size_t shot, size_t k) const {
        return (detector_bits[shot * detector_stride() + k / 8] >> (k % 8)) & 1;
    }
    bool observable(size_t shot, size_t k) const {
        return (observable_bits[shot * observable_stride() + k / 8] >> (k % 8)) & 1;
    }
    void set_detector(size_t shot, size_t k, bool v);
    void set_observable(size_t shot, size_t k, bool v);
    /// Indices of the detectors that fired in one shot.
    std::vector<uint32_t> fired(size_t shot) const;
    /// Observable flips of one shot as a mask (at most 64 observables).
    uint64_t observable_mask(size_t shot) const;

    /// Appends the shots of `other`, which must have the same shape.
    void append(const DetectionData &other);

    bool operator==(const DetectionData &other) const = default;
};

/// Binary dump: three little-endian uint64 (shots, detectors, observables), then for each shot its
/// packed detector row followed by its packed observable row.
void write_detection_data(std::ostream &out, const DetectionData &data);
DetectionData read_detection_data(std::istream &in);

/// Pauli-frame Monte Carlo sampler.
///
/// Frames track the difference between a noisy run and a noiseless one. Resets and measurements
/// randomize the part of the frame that the collapsed state is insensitive to, so detector and
/// observable parities come out right without a reference sample.
class FrameSampler {
   public:
    /// Shots simulated together in one bit-packed batch.
    static constexpr size_t BATCH_SHOTS = 1 << 14;

    explicit FrameSampler(const Circuit &circuit);

    size_t num_detectors() const {
        return detectors_.size();
    }
    size_t num_observables() const {
        return observables_.size();
    }
    size_t num_measurements() const {
        return num_measurements_;
    }

    /// Samples `shots` shots as consecutive batches; batch b draws from a generator seeded with
    /// (seed, b), so results do not depend on how the work is split.
    DetectionData sample(size_t shots, uint64_t seed) const;
    /// One batch of at most BATCH_SHOTS shots.
    DetectionData sample_batch(size_t shots, uint64_t seed, uint64_t batch_index) const;

    /// Measurement flips (relative to a noiseless run) of one batch, measurement-major with
    /// `words` 64-bit words per measurement. Exposed for tests.
    std::vector<uint64_t> sample_flips(size_t words, std::mt19937_64 &rng) const;

    /// One place where the noisy circuit can go wrong: a noise channel acting on one qubit or one
    /// pair, or the flip of one noisy measurement.
    struct NoiseSite {
        uint32_t op = 0;
        Gate gate = Gate::DEP1;
        double probability = 0;
        std::vector<uint32_t> qubits;
        /// Measurement index for measurement flips.
        uint32_t measurement = 0;
    };
    const std::vector<NoiseSite> &noise_sites() const {
        return sites_;
    }

    /// A single error placed in one shot slot: `pauli` packs (x0, z0, x1, z1) from bit 0 upward
    /// and is ignored for measurement flips.
    struct Injection {
        uint32_t site;
        uint32_t slot;
        uint8_t pauli;
    };

    /// Noise-free propagation of injected errors; returns measurement flips measurement-major with
    /// `words` words per measurement. `gauge_seed` drives the frame randomization.
    std::vector<uint64_t> propagate(const std::vector<Injection> &injections, size_t words, uint64_t gauge_seed) const;

    const std::vector<std::vector<uint32_t>> &detectors() const {
        return detectors_;
    }
    const std::vector<std::vector<uint32_t>> &observables() const {
        return observables_;
    }

   private:
    struct Op {
        Gate gate;
        std::vector<uint32_t> targets;
        double probability = 0;
        uint32_t first_measurement = 0;
        uint32_t first_site = 0;
    };
    template <typename NoiseHook>
    void run(size_t words, std::mt19937_64 &rng, std::vector<uint64_t> &flips, NoiseHook &&hook) const;

    std::vector<Op> ops_;
    std::vector<NoiseSite> sites_;
    size_t num_qubits_ = 0;
    size_t num_measurements_ = 0;
    std::vector<std::vector<uint32_t>> detectors_;
    std::vector<std::vector<uint32_t>> observables_;
};

}  // namespace pqec

#endif
