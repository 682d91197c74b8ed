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

#include "pqec/noise.h"

#include <stdexcept>
#include <vector>

namespace pqec {

namespace {

class Noisifier {
   public:
    Noisifier(size_t num_qubits, double p) : touched_(num_qubits, false), p_(p) {
    }

    Circuit run(const Circuit &in) {
        Circuit out;
        layer_has_ops_ = false;
        for (const Instruction &inst : in.instructions) {
            if (inst.gate == Gate::TICK) {
                flush(out);
                out.append_tick();
                continue;
            }
            if (inst.gate == Gate::REPEAT) {
                flush(out);
                out.append_repeat(inst.repeat_count, run(in.blocks[inst.block]));
                continue;
            }
            const GateInfo &info = gate_info(inst.gate);
            if (info.is_annotation) {
                out.instructions.push_back(inst);
                continue;
            }
            std::vector<uint32_t> qubits;
            for (const Target &t : inst.targets) {
                qubits.push_back(t.value);
                touched_[t.value] = true;
            }
            layer_has_ops_ = true;
            if (info.is_reset) {
                out.instructions.push_back(inst);
                out.append(inst.gate == Gate::RX ? Gate::ZERR : Gate::XERR, qubits, {p_});
            } else if (info.is_measurement) {
                Instruction noisy = inst;
                noisy.args = {p_};
                out.instructions.push_back(std::move(noisy));
                out.append(info.is_pair ? Gate::DEP2 : Gate::DEP1, qubits, {p_});
            } else {
                out.instructions.push_back(inst);
            }
        }
        flush(out);
        return out;
    }

   private:
    void flush(Circuit &out) {
        if (!layer_has_ops_) {
            return;
        }
        std::vector<uint32_t> idle;
        for (uint32_t q = 0; q < touched_.size(); q++) {
            if (!touched_[q]) {
                idle.push_back(q);
            }
            touched_[q] = false;
        }
        if (!idle.empty()) {
            out.append(Gate::DEP1, idle, {p_});
        }
        layer_has_ops_ = false;
    }

    std::vector<bool> touched_;
    double p_;
    bool layer_has_ops_ = false;
};

}  // namespace

Circuit noisify(const Circuit &circuit, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("noise strength must be in [0, 1]");
    }
    if (circuit.has_noise()) {
        throw std::invalid_argument("circuit already contains noise");
    }
    if (!validate(circuit).empty()) {
        throw std::invalid_argument("circuit does not validate");
    }
    return Noisifier(circuit.num_qubits(), p).run(circuit);
}

}  // namespace pqec
