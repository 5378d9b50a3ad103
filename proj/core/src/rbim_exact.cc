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

#include "toric/rbim_exact.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "toric/error.h"

namespace toric {

namespace {

struct BondTerm {
    int f1;
    int f2;
    double coupling;  // tau_b * J_b
};

std::vector<BondTerm> bond_terms(const LatticeGeometry& geometry, const BondConfiguration& config,
                                 const CouplingsXZ& couplings) {
    if (config.size() != geometry.qubit_count()) throw StructuralError("bond configuration does not match lattice");
    std::vector<BondTerm> terms;
    terms.reserve(config.size());
    for (std::size_t b = 0; b < config.size(); ++b) {
        auto [f1, f2] = geometry.adjacent_faces(b);
        double j = geometry.qubit(b).type == EdgeType::Horizontal ? couplings.j_h : couplings.j_v;
        terms.push_back({static_cast<int>(geometry.vertex_index(f1)), static_cast<int>(geometry.vertex_index(f2)),
                         config.tau(b) * j});
    }
    return terms;
}

double log_sum_exp(const std::vector<double>& v) {
    double top = *std::max_element(v.begin(), v.end());
    if (std::isinf(top)) return top;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - top);
    return top + std::log(acc);
}

}  // namespace

double ising_energy(const LatticeGeometry& geometry, const BondConfiguration& config, const CouplingsXZ& couplings,
                    const SpinConfiguration& spins) {
    if (spins.sigma.size() != geometry.vertex_count()) throw StructuralError("spin configuration size mismatch");
    double h = 0.0;
    for (const auto& t : bond_terms(geometry, config, couplings)) {
        h += t.coupling * spins.sigma[t.f1] * spins.sigma[t.f2];
    }
    return h;
}

double log_partition_function(const LatticeGeometry& geometry, const BondConfiguration& config,
                              const CouplingsXZ& couplings) {
    if (geometry.n() > kPartitionMaxN) {
        throw SizeLimitError("partition function enumeration supports n <= " + std::to_string(kPartitionMaxN));
    }
    auto terms = bond_terms(geometry, config, couplings);
    const std::uint32_t states = 1u << geometry.vertex_count();
    std::vector<double> energies(states);
    for (std::uint32_t s = 0; s < states; ++s) {
        double h = 0.0;
        for (const auto& t : terms) {
            bool same = ((s >> t.f1) & 1u) == ((s >> t.f2) & 1u);
            h += same ? t.coupling : -t.coupling;
        }
        energies[s] = h;
    }
    return log_sum_exp(energies);
}

double partition_function(const LatticeGeometry& geometry, const BondConfiguration& config,
                          const CouplingsXZ& couplings) {
    return std::exp(log_partition_function(geometry, config, couplings));
}

DualityReport duality_identity_check(const CouplingsXZ& couplings, int n) {
    if (n > kDualityMaxN) {
        throw SizeLimitError("duality check enumerates 2^(2n^2) bond assignments; n <= " +
                             std::to_string(kDualityMaxN));
    }
    LatticeGeometry geometry(n);
    BondConfiguration ferro(geometry, LatticeId::L1);

    DualityReport r;
    r.spin_sum = partition_function(geometry, ferro, couplings);

    const std::size_t bonds = geometry.qubit_count();
    std::vector<std::uint64_t> face_masks(geometry.vertex_count(), 0);
    std::vector<bool> horizontal(bonds);
    for (std::size_t b = 0; b < bonds; ++b) {
        auto [f1, f2] = geometry.adjacent_faces(b);
        face_masks[geometry.vertex_index(f1)] |= std::uint64_t{1} << b;
        face_masks[geometry.vertex_index(f2)] |= std::uint64_t{1} << b;
        horizontal[b] = geometry.qubit(b).type == EdgeType::Horizontal;
    }
    // Per-bond weights indexed by s in {0, 1}.
    const double dual_h[2] = {dual_bond_weight(couplings.j_h, 0), dual_bond_weight(couplings.j_h, 1)};
    const double dual_v[2] = {dual_bond_weight(couplings.j_v, 0), dual_bond_weight(couplings.j_v, 1)};
    // Self-dual form: a horizontal primal bond faces a vertical dual bond.
    const double primal_h[2] = {bond_weight(couplings.j_v, 1), bond_weight(couplings.j_v, -1)};
    const double primal_v[2] = {bond_weight(couplings.j_h, 1), bond_weight(couplings.j_h, -1)};

    double loop_sum = 0.0;
    double self_dual_sum = 0.0;
    const std::uint64_t total = std::uint64_t{1} << bonds;
    for (std::uint64_t s = 0; s < total; ++s) {
        bool closed = true;
        for (auto m : face_masks) {
            if (std::popcount(s & m) & 1) {
                closed = false;
                break;
            }
        }
        if (!closed) continue;
        double a = 1.0;
        double b = 1.0;
        for (std::size_t e = 0; e < bonds; ++e) {
            int bit = static_cast<int>((s >> e) & 1u);
            a *= horizontal[e] ? dual_h[bit] : dual_v[bit];
            b *= horizontal[e] ? primal_h[bit] : primal_v[bit];
        }
        loop_sum += a;
        self_dual_sum += b;
    }
    r.loop_sum = loop_sum;
    r.self_dual_sum = self_dual_sum;
    r.loop_relative_error = std::fabs(r.loop_sum - r.spin_sum) / r.spin_sum;
    r.self_dual_relative_error = std::fabs(r.self_dual_sum - r.spin_sum) / r.spin_sum;
    r.max_relative_error = std::max(r.loop_relative_error, r.self_dual_relative_error);
    return r;
}

int ClassProbabilities::most_likely() const {
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

BondConfiguration logical_representative(const LatticeGeometry& geometry, LatticeId id, LogicalClass c) {
    BondConfiguration rep(geometry, id);
    for (int i = 0; i < geometry.n(); ++i) {
        if (c.horizontal) rep.flip(geometry.horizontal_bond(0, i));
        if (c.vertical) rep.flip(geometry.vertical_bond(i, 0));
    }
    return rep;
}

ClassProbabilities class_probabilities(const LatticeGeometry& geometry, const BondConfiguration& config,
                                       const IndependentXZModel& assumed) {
    if (geometry.n() > kMleMaxN) {
        throw SizeLimitError("exact class probabilities support n <= " + std::to_string(kMleMaxN));
    }
    const double px = std::max(assumed.p_x(), kMinAssumedRate);
    const double pz = std::max(assumed.p_z(), kMinAssumedRate);
    const std::size_t bonds = geometry.qubit_count();
    std::vector<double> log_flip(bonds);
    std::vector<double> log_keep(bonds);
    for (std::size_t b = 0; b < bonds; ++b) {
        double p = geometry.qubit(b).type == EdgeType::Horizontal ? px : pz;
        log_flip[b] = std::log(p);
        log_keep[b] = std::log1p(-p);
    }
    // Every trivial loop is the boundary of a face set F, and F and its
    // complement have the same boundary, so face 0 is left out of F.
    const std::size_t faces = geometry.vertex_count();
    std::vector<std::uint64_t> face_masks(faces, 0);
    for (std::size_t f = 0; f < faces; ++f) {
        for (auto b : geometry.face_bonds(geometry.vertex(f))) face_masks[f] ^= std::uint64_t{1} << b;
    }
    std::uint64_t base = 0;
    for (std::size_t b = 0; b < bonds; ++b) {
        if (config.flipped(b)) base |= std::uint64_t{1} << b;
    }

    std::array<std::vector<double>, 4> logs;
    for (int code = 0; code < 4; ++code) {
        auto rep = logical_representative(geometry, config.lattice_id(), LogicalClass::from_code(code));
        std::uint64_t shift = base;
        for (std::size_t b = 0; b < bonds; ++b) {
            if (rep.flipped(b)) shift ^= std::uint64_t{1} << b;
        }
        const std::uint64_t subsets = std::uint64_t{1} << (faces - 1);
        logs[code].reserve(subsets);
        for (std::uint64_t f = 0; f < subsets; ++f) {
            std::uint64_t chain = shift;
            for (std::size_t i = 0; i + 1 < faces; ++i) {
                if ((f >> i) & 1u) chain ^= face_masks[i + 1];
            }
            double lp = 0.0;
            for (std::size_t b = 0; b < bonds; ++b) lp += ((chain >> b) & 1u) ? log_flip[b] : log_keep[b];
            logs[code].push_back(lp);
        }
    }
    std::array<double, 4> class_log{};
    for (int code = 0; code < 4; ++code) class_log[code] = log_sum_exp(logs[code]);
    double top = *std::max_element(class_log.begin(), class_log.end());
    ClassProbabilities out;
    double total = 0.0;
    for (int code = 0; code < 4; ++code) {
        out.p[code] = std::exp(class_log[code] - top);
        total += out.p[code];
    }
    for (auto& v : out.p) v /= total;
    return out;
}

std::array<ClassProbabilities, 2> mle_class_probabilities(const PauliErrorPattern& errors,
                                                          const IndependentXZModel& assumed,
                                                          const LatticeGeometry& geometry) {
    auto [l1, l2] = map_errors_to_bonds(geometry, errors);
    return {class_probabilities(geometry, l1, assumed), class_probabilities(geometry, l2, assumed)};
}

BondConfiguration reference_chain(const LatticeGeometry& geometry, const Syndrome& syndrome) {
    if (syndrome.size() % 2 != 0) throw StructuralError("syndrome has an odd number of anyons");
    BondConfiguration chain(geometry, syndrome.lattice_id);
    for (std::size_t i = 0; i + 1 < syndrome.size(); i += 2) {
        flip_path(geometry, syndrome.anyons[i], syndrome.anyons[i + 1], chain);
    }
    return chain;
}

Correction mle_decode_lattice(const Syndrome& syndrome, const IndependentXZModel& assumed,
                              const LatticeGeometry& geometry) {
    auto reference = reference_chain(geometry, syndrome);
    auto probs = class_probabilities(geometry, reference, assumed);
    auto best = LogicalClass::from_code(probs.most_likely());
    return {reference * logical_representative(geometry, syndrome.lattice_id, best)};
}

DecodeOutcome mle_decode_and_classify(const PauliErrorPattern& errors, const IndependentXZModel& assumed,
                                      const LatticeGeometry& geometry) {
    auto [l1, l2] = map_errors_to_bonds(geometry, errors);
    mle_decode_lattice(extract_syndrome(geometry, l1), assumed, geometry).apply_to(l1);
    mle_decode_lattice(extract_syndrome(geometry, l2), assumed, geometry).apply_to(l2);
    DecodeOutcome out;
    out.l1 = homology_class(geometry, l1);
    out.l2 = homology_class(geometry, l2);
    out.success = out.l1.trivial() && out.l2.trivial();
    return out;
}

}  // namespace toric
