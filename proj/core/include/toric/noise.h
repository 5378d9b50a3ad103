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

#pragma once

#include <cstdint>

#include "toric/lattice.h"
#include "toric/pauli.h"

namespace toric {

/// Independent X and Z flips with probabilities p_x and p_z. Used both for the
/// actual channel and for the rates a decoder assumes.
class IndependentXZModel {
   public:
    /// Throws DomainError unless 0 <= p < 1/2 for both rates.
    IndependentXZModel(double p_x, double p_z);

    double p_x() const { return p_x_; }
    double p_z() const { return p_z_; }

    bool operator==(const IndependentXZModel&) const = default;

   private:
    double p_x_;
    double p_z_;
};

/// Single-qubit Pauli channel with X, Y, Z probabilities.
class GeneralPauliModel {
   public:
    /// Throws DomainError unless every q >= 0 and q_x + q_y + q_z < 1.
    GeneralPauliModel(double q_x, double q_y, double q_z);

    double q_x() const { return q_x_; }
    double q_y() const { return q_y_; }
    double q_z() const { return q_z_; }
    double identity() const { return 1.0 - q_x_ - q_y_ - q_z_; }

   private:
    double q_x_;
    double q_y_;
    double q_z_;
};

struct RngSeedPolicy {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

PauliErrorPattern sample_xz(const IndependentXZModel& model, const LatticeGeometry& geometry,
                            const RngSeedPolicy& seed);

/// Same as sample_xz but reuses the caller's buffer.
void sample_xz_into(PauliErrorPattern& out, const IndependentXZModel& model, const LatticeGeometry& geometry,
                    const RngSeedPolicy& seed);

PauliErrorPattern sample_general(const GeneralPauliModel& model, const LatticeGeometry& geometry,
                                 const RngSeedPolicy& seed);

/// The channel obtained by composing independent X and Z flips.
GeneralPauliModel xz_to_general(double p_x, double p_z);

}  // namespace toric
