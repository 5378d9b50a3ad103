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
#include <vector>

#include "toric/lattice.h"
#include "toric/matching.h"
#include "toric/noise.h"

namespace toric {

/// Assumed rates of exactly zero are replaced by this before taking logs.
inline constexpr double kMinAssumedRate = 1e-12;

/// Per-step matching weights ln((1-p)/p) for horizontal (X) and vertical (Z)
/// moves. These are minus the log of the step probability ratio, so the most
/// probable pairing is the one of minimum total weight.
struct AssumedWeights {
    double w_h = 0.0;
    double w_v = 0.0;

    static AssumedWeights from_model(const IndependentXZModel& assumed);
    AssumedWeights scaled(double factor) const { return {w_h * factor, w_v * factor}; }
};

double pair_weight(const AssumedWeights& weights, int l_h, int l_v);

/// Bonds to flip on one decoding lattice, stored as a +-1 configuration.
struct Correction {
    BondConfiguration bonds;

    std::size_t size() const { return bonds.count_flipped(); }
    void apply_to(BondConfiguration& config) const { config *= bonds; }
};

struct DecodeOutcome {
    LogicalClass l1;
    LogicalClass l2;
    bool success = true;
};

/// MWPM decoder for one lattice size and one assumed noise model. Holds the
/// solver workspace, so keep one per thread.
class Decoder {
   public:
    Decoder(const LatticeGeometry& geometry, const AssumedWeights& weights);
    Decoder(const LatticeGeometry& geometry, const IndependentXZModel& assumed)
        : Decoder(geometry, AssumedWeights::from_model(assumed)) {}

    const LatticeGeometry& geometry() const { return geometry_; }
    const AssumedWeights& weights() const { return weights_; }

    /// Matches anyons on the complete graph and joins each pair with a
    /// horizontal-then-vertical path along the shorter way round the torus.
    /// Throws StructuralError on an odd syndrome.
    Correction decode(const Syndrome& syndrome);

    DecodeOutcome decode_and_classify(const PauliErrorPattern& errors);

    /// Integer cost of a pair at separation (l_h, l_v) as seen by the solver.
    std::int64_t pair_cost(int l_h, int l_v) const { return l_h * unit_h_ + l_v * unit_v_; }

   private:
    LatticeGeometry geometry_;
    AssumedWeights weights_;
    std::int64_t unit_h_ = 0;
    std::int64_t unit_v_ = 0;
    BlossomSolver solver_;
    std::vector<std::int64_t> costs_;
};

/// Joins a to b with the L-shaped path used by the decoder, flipping bonds in
/// correction.
void flip_path(const LatticeGeometry& geometry, const Vertex& a, const Vertex& b, BondConfiguration& correction);

Correction decode_lattice(const Syndrome& syndrome, const IndependentXZModel& assumed,
                          const LatticeGeometry& geometry);

DecodeOutcome decode_and_classify(const PauliErrorPattern& errors, const IndependentXZModel& assumed,
                                  const LatticeGeometry& geometry);

}  // namespace toric
