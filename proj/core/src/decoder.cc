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

#include "toric/decoder.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "toric/error.h"

namespace toric {

namespace {

double step_weight(double p) {
    p = std::max(p, kMinAssumedRate);
    return std::log((1.0 - p) / p);
}

}  // namespace

AssumedWeights AssumedWeights::from_model(const IndependentXZModel& assumed) {
    return {step_weight(assumed.p_x()), step_weight(assumed.p_z())};
}

double pair_weight(const AssumedWeights& weights, int l_h, int l_v) {
    return l_h * weights.w_h + l_v * weights.w_v;
}

Decoder::Decoder(const LatticeGeometry& geometry, const AssumedWeights& weights)
    : geometry_(geometry), weights_(weights) {
    if (!(weights.w_h >= 0.0 && weights.w_v >= 0.0) || !std::isfinite(weights.w_h) ||
        !std::isfinite(weights.w_v)) {
        throw DomainError("matching weights must be finite and nonnegative");
    }
    // The argmin only depends on the ratio w_h : w_v, so quantize after
    // normalizing. This makes decoding exactly invariant under rescaling.
    double top = std::max(weights.w_h, weights.w_v);
    if (top > 0.0) {
        unit_h_ = quantize_weight(weights.w_h / top);
        unit_v_ = quantize_weight(weights.w_v / top);
    }
}

void flip_path(const LatticeGeometry& geometry, const Vertex& a, const Vertex& b, BondConfiguration& correction) {
    const int n = geometry.n();
    int dc = geometry.wrap(b.col - a.col);
    int dr = geometry.wrap(b.row - a.row);
    int row = a.row;
    int col = a.col;
    if (dc <= n - dc) {
        for (int i = 0; i < dc; ++i, col = geometry.wrap(col + 1)) correction.flip(geometry.horizontal_bond(row, col));
    } else {
        for (int i = 0; i < n - dc; ++i, col = geometry.wrap(col - 1))
            correction.flip(geometry.horizontal_bond(row, col - 1));
    }
    if (dr <= n - dr) {
        for (int i = 0; i < dr; ++i, row = geometry.wrap(row + 1)) correction.flip(geometry.vertical_bond(row, col));
    } else {
        for (int i = 0; i < n - dr; ++i, row = geometry.wrap(row - 1))
            correction.flip(geometry.vertical_bond(row - 1, col));
    }
}

Correction Decoder::decode(const Syndrome& syndrome) {
    Correction out{BondConfiguration(geometry_, syndrome.lattice_id)};
    const auto& anyons = syndrome.anyons;
    const int k = static_cast<int>(anyons.size());
    if (k % 2 != 0) {
        throw StructuralError("syndrome has an odd number of anyons (" + std::to_string(k) + ")");
    }
    if (k == 0) return out;

    costs_.assign(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            auto sep = torus_separation(geometry_, anyons[i], anyons[j]);
            auto c = pair_cost(sep.horizontal, sep.vertical);
            costs_[static_cast<std::size_t>(i) * k + j] = c;
            costs_[static_cast<std::size_t>(j) * k + i] = c;
        }
    }
    auto mate = solver_.solve(k, costs_);
    for (int i = 0; i < k; ++i) {
        if (i < mate[i]) flip_path(geometry_, anyons[i], anyons[mate[i]], out.bonds);
    }
    return out;
}

DecodeOutcome Decoder::decode_and_classify(const PauliErrorPattern& errors) {
    auto [l1, l2] = map_errors_to_bonds(geometry_, errors);
    decode(extract_syndrome(geometry_, l1)).apply_to(l1);
    decode(extract_syndrome(geometry_, l2)).apply_to(l2);
    DecodeOutcome out;
    out.l1 = cut_parities(geometry_, l1);
    out.l2 = cut_parities(geometry_, l2);
    out.success = out.l1.trivial() && out.l2.trivial();
    return out;
}

Correction decode_lattice(const Syndrome& syndrome, const IndependentXZModel& assumed,
                          const LatticeGeometry& geometry) {
    Decoder decoder(geometry, assumed);
    return decoder.decode(syndrome);
}

DecodeOutcome decode_and_classify(const PauliErrorPattern& errors, const IndependentXZModel& assumed,
                                  const LatticeGeometry& geometry) {
    Decoder decoder(geometry, assumed);
    return decoder.decode_and_classify(errors);
}

}  // namespace toric
