// Copyright 2026 The Toric Mismatch Authors
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

#include "toric/noise.h"

#include <cmath>
#include <string>

#include "toric/error.h"
#include "toric/philox.h"

namespace toric {

namespace {

constexpr std::uint32_t kStreamXZ = 0x585a;
constexpr std::uint32_t kStreamGeneral = 0x47454e;

void check_rate(double p, const char* name) {
    if (!(p >= 0.0 && p < 0.5)) {
        throw DomainError(std::string(name) + " must lie in [0, 0.5), got " + std::to_string(p));
    }
}

}  // namespace

IndependentXZModel::IndependentXZModel(double p_x, double p_z) : p_x_(p_x), p_z_(p_z) {
    check_rate(p_x, "p_x");
    check_rate(p_z, "p_z");
}

GeneralPauliModel::GeneralPauliModel(double q_x, double q_y, double q_z) : q_x_(q_x), q_y_(q_y), q_z_(q_z) {
    if (!(q_x >= 0.0 && q_y >= 0.0 && q_z >= 0.0) || !(q_x + q_y + q_z < 1.0)) {
        throw DomainError("Pauli channel probabilities must be nonnegative with sum below 1");
    }
}

void sample_xz_into(PauliErrorPattern& out, const IndependentXZModel& model, const LatticeGeometry& geometry,
                    const RngSeedPolicy& seed) {
    if (out.size() != geometry.qubit_count()) {
        out = PauliErrorPattern(geometry.qubit_count());
    } else {
        out.clear();
    }
    CounterStream rng(seed.master_seed, seed.trial_index, kStreamXZ);
    for (std::size_t q = 0; q < out.size(); ++q) {
        // Both draws are always consumed so qubit q owns a fixed pair of words.
        double ux = rng.next_unit();
        double uz = rng.next_unit();
        if (ux < model.p_x()) out.set_x(q);
        if (uz < model.p_z()) out.set_z(q);
    }
}

PauliErrorPattern sample_xz(const IndependentXZModel& model, const LatticeGeometry& geometry,
                            const RngSeedPolicy& seed) {
    PauliErrorPattern out(geometry.qubit_count());
    sample_xz_into(out, model, geometry, seed);
    return out;
}

PauliErrorPattern sample_general(const GeneralPauliModel& model, const LatticeGeometry& geometry,
                                 const RngSeedPolicy& seed) {
    PauliErrorPattern out(geometry.qubit_count());
    CounterStream rng(seed.master_seed, seed.trial_index, kStreamGeneral);
    const double cx = model.q_x();
    const double cy = cx + model.q_y();
    const double cz = cy + model.q_z();
    for (std::size_t q = 0; q < out.size(); ++q) {
        double u = rng.next_unit();
        if (u < cx) {
            out.set_x(q);
        } else if (u < cy) {
            out.set_x(q);
            out.set_z(q);
        } else if (u < cz) {
            out.set_z(q);
        }
    }
    return out;
}

GeneralPauliModel xz_to_general(double p_x, double p_z) {
    check_rate(p_x, "p_x");
    check_rate(p_z, "p_z");
    return GeneralPauliModel(p_x * (1.0 - p_z), p_x * p_z, p_z * (1.0 - p_x));
}

}  // namespace toric
