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

#include <array>
#include <cstdint>
#include <vector>

#include "toric/decoder.h"
#include "toric/lattice.h"
#include "toric/noise.h"
#include "toric/rbim_analytic.h"

namespace toric {

inline constexpr int kPartitionMaxN = 4;
inline constexpr int kDualityMaxN = 3;
inline constexpr int kMleMaxN = 3;

/// +-1 spins on the n^2 faces of a decoding lattice (its dual vertices),
/// face (r, c) at index r * n + c.
struct SpinConfiguration {
    std::vector<std::int8_t> sigma;
};

/// ln of the exact partition function sum_sigma exp(H(sigma)) with
/// H = sum_b tau_b J_b sigma_f1 sigma_f2, where J_b = J_H on horizontal bonds
/// and J_V on vertical ones and f1, f2 are the faces either side of b.
/// Throws SizeLimitError for n > 4.
double log_partition_function(const LatticeGeometry& geometry, const BondConfiguration& config,
                              const CouplingsXZ& couplings);

double partition_function(const LatticeGeometry& geometry, const BondConfiguration& config,
                          const CouplingsXZ& couplings);

/// H(sigma) for one spin configuration.
double ising_energy(const LatticeGeometry& geometry, const BondConfiguration& config, const CouplingsXZ& couplings,
                    const SpinConfiguration& spins);

/// All bonds +1. spin_sum is the direct sum over spins; loop_sum the restricted
/// sum over bond variables s with even parity around every face, weighted by
/// u*; self_dual_sum the same restricted sum with u* replaced by the primal
/// weights of the crossing bond type. The first two agree for every coupling;
/// the third agrees only on the self-dual manifold.
struct DualityReport {
    double spin_sum = 0.0;
    double loop_sum = 0.0;
    double self_dual_sum = 0.0;
    double loop_relative_error = 0.0;
    double self_dual_relative_error = 0.0;
    double max_relative_error = 0.0;
};

/// Throws SizeLimitError for n > 3.
DualityReport duality_identity_check(const CouplingsXZ& couplings, int n);

/// Class probabilities indexed by LogicalClass::code() of (candidate * reference).
struct ClassProbabilities {
    std::array<double, 4> p{};

    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
    int most_likely() const;
};

/// For each bond configuration with the same syndrome as `config`, weight
/// prod_b (1 - p_b)^{(1+tau)/2} p_b^{(1-tau)/2} with p_b = p_X on horizontal
/// bonds and p_Z on vertical ones, and bucket by the homology class of the
/// candidate relative to `config`. Throws SizeLimitError for n > 3.
ClassProbabilities class_probabilities(const LatticeGeometry& geometry, const BondConfiguration& config,
                                       const IndependentXZModel& assumed);

/// Class probabilities for both lattices, relative to the actual error: entry
/// 0 is the probability mass of corrections that succeed.
std::array<ClassProbabilities, 2> mle_class_probabilities(const PauliErrorPattern& errors,
                                                          const IndependentXZModel& assumed,
                                                          const LatticeGeometry& geometry);

/// A fixed chain annihilating the syndrome: anyons paired in index order.
BondConfiguration reference_chain(const LatticeGeometry& geometry, const Syndrome& syndrome);

/// Representative of a logical class: a full row of horizontal bonds and/or a
/// full column of vertical bonds.
BondConfiguration logical_representative(const LatticeGeometry& geometry, LatticeId id, LogicalClass c);

/// Exact maximum-likelihood decoding. Sees only the syndrome; ties go to the
/// lowest class code relative to the reference chain.
Correction mle_decode_lattice(const Syndrome& syndrome, const IndependentXZModel& assumed,
                              const LatticeGeometry& geometry);

DecodeOutcome mle_decode_and_classify(const PauliErrorPattern& errors, const IndependentXZModel& assumed,
                                      const LatticeGeometry& geometry);

}  // namespace toric
