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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "toric/decoder.h"
#include "toric/error.h"
#include "toric/lattice.h"
#include "toric/noise.h"

namespace toric {
namespace {

TEST(AssumedWeights, FromModel) {
    auto w = AssumedWeights::from_model({0.1, 0.2});
    EXPECT_NEAR(w.w_h, std::log(9.0), 1e-15);
    EXPECT_NEAR(w.w_v, std::log(4.0), 1e-15);
    auto same = AssumedWeights::from_model({0.05, 0.05});
    EXPECT_EQ(same.w_h, same.w_v);
    auto zero = AssumedWeights::from_model({0.0, 0.1});
    EXPECT_NEAR(zero.w_h, std::log((1 - kMinAssumedRate) / kMinAssumedRate), 1e-9);
}

TEST(PairWeight, Examples) {
    auto w = AssumedWeights::from_model({0.1, 0.1});
    EXPECT_EQ(pair_weight(w, 0, 0), 0.0);
    EXPECT_NEAR(pair_weight(w, 2, 1), 3 * std::log(9.0), 1e-12);
    EXPECT_NEAR(pair_weight(w, 2, 1), 6.5917, 1e-4);
    auto a = AssumedWeights::from_model({0.03, 0.2});
    auto b = AssumedWeights::from_model({0.2, 0.03});
    EXPECT_NEAR(pair_weight(a, 5, 2), pair_weight(b, 2, 5), 1e-12);
}

TEST(DecodeLattice, EmptySyndrome) {
    LatticeGeometry g(6);
    auto c = decode_lattice({LatticeId::L1, {}}, {0.1, 0.1}, g);
    EXPECT_EQ(c.size(), 0u);
}

TEST(DecodeLattice, AdjacentPair) {
    LatticeGeometry g(6);
    auto c = decode_lattice({LatticeId::L1, {{2, 3}, {2, 4}}}, {0.1, 0.1}, g);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(c.bonds.flipped(g.horizontal_bond(2, 3)));
}

TEST(DecodeLattice, ThreeBondChain) {
    LatticeGeometry g(10);
    BondConfiguration error(g, LatticeId::L1);
    for (int col = 4; col < 7; ++col) error.flip(g.horizontal_bond(5, col));
    auto syndrome = extract_syndrome(g, error);
    ASSERT_EQ(syndrome.size(), 2u);
    auto c = decode_lattice(syndrome, {0.1, 0.1}, g);
    EXPECT_EQ(c.size(), 3u);
    c.apply_to(error);
    EXPECT_EQ(error.count_flipped(), 0u);
}

TEST(DecodeLattice, OddSyndromeThrows) {
    LatticeGeometry g(4);
    EXPECT_THROW(decode_lattice({LatticeId::L1, {{0, 0}}}, {0.1, 0.1}, g), StructuralError);
}

TEST(DecodeLattice, WrapsTheShortWay) {
    LatticeGeometry g(8);
    auto c = decode_lattice({LatticeId::L2, {{1, 7}, {7, 0}}}, {0.1, 0.1}, g);
    EXPECT_EQ(c.size(), 3u);
    EXPECT_EQ(extract_syndrome(g, c.bonds).anyons, (std::vector<Vertex>{{1, 7}, {7, 0}}));
}

TEST(DecodeAndClassify, Examples) {
    LatticeGeometry g(6);
    PauliErrorPattern none(g.qubit_count());
    EXPECT_TRUE(decode_and_classify(none, {0.1, 0.1}, g).success);

    PauliErrorPattern single(g.qubit_count());
    single.set_x(g.horizontal_bond(3, 3));
    EXPECT_TRUE(decode_and_classify(single, {0.1, 0.1}, g).success);

    PauliErrorPattern winding(g.qubit_count());
    for (int col = 0; col < 6; ++col) winding.set_x(g.horizontal_bond(2, col));
    auto o = decode_and_classify(winding, {0.1, 0.1}, g);
    EXPECT_FALSE(o.success);
    EXPECT_FALSE(o.l1.trivial());
    EXPECT_TRUE(o.l2.trivial());
}

TEST(DecodeAndClassify, SuccessIffBothTrivial) {
    LatticeGeometry g(5);
    IndependentXZModel m(0.12, 0.12);
    for (std::uint64_t t = 0; t < 300; ++t) {
        auto o = decode_and_classify(sample_xz(m, g, {3, t}), m, g);
        EXPECT_EQ(o.success, o.l1.trivial() && o.l2.trivial());
    }
}

TEST(Decoder, CorrectionAlwaysAnnihilatesSyndrome) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> rate(0.0, 0.3);
    for (int n : {2, 3, 4, 7, 10}) {
        LatticeGeometry g(n);
        for (std::uint64_t t = 0; t < 2000; ++t) {
            IndependentXZModel actual(rate(rng), rate(rng));
            IndependentXZModel assumed(rate(rng), rate(rng));
            Decoder d(g, assumed);
            auto [l1, l2] = map_errors_to_bonds(g, sample_xz(actual, g, {17, t}));
            for (auto* c : {&l1, &l2}) {
                d.decode(extract_syndrome(g, *c)).apply_to(*c);
                ASSERT_TRUE(extract_syndrome(g, *c).empty());
            }
        }
    }
}

TEST(Decoder, ShortChainsBelowHalfDistanceSucceed) {
    const int n = 11;
    LatticeGeometry g(n);
    for (int len = 1; len < n / 2; ++len) {
        for (int r = 0; r < n; ++r) {
            for (int start : {0, 4, 9}) {
                PauliErrorPattern x(g.qubit_count());
                PauliErrorPattern z(g.qubit_count());
                for (int k = 0; k < len; ++k) {
                    x.set_x(g.horizontal_bond(r, start + k));
                    z.set_z(g.vertical_bond(start + k, r));
                }
                for (auto assumed : {IndependentXZModel(0.1, 0.1), IndependentXZModel(0.02, 0.2)}) {
                    EXPECT_TRUE(decode_and_classify(x, assumed, g).success);
                    EXPECT_TRUE(decode_and_classify(z, assumed, g).success);
                }
            }
        }
    }
}

TEST(Decoder, RescaledWeightsGiveIdenticalCorrections) {
    LatticeGeometry g(9);
    IndependentXZModel actual(0.12, 0.06);
    auto base = AssumedWeights::from_model({0.1, 0.04});
    Decoder d0(g, base);
    for (double lambda : {0.01, 0.5, 3.0, 40.0}) {
        Decoder d1(g, base.scaled(lambda));
        for (std::uint64_t t = 0; t < 300; ++t) {
            auto [l1, l2] = map_errors_to_bonds(g, sample_xz(actual, g, {8, t}));
            for (auto* c : {&l1, &l2}) {
                auto s = extract_syndrome(g, *c);
                EXPECT_EQ(d0.decode(s).bonds, d1.decode(s).bonds);
            }
        }
    }
}

TEST(Decoder, ZeroAssumedRateStillDecodes) {
    LatticeGeometry g(6);
    IndependentXZModel actual(0.1, 0.1);
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto [l1, l2] = map_errors_to_bonds(g, sample_xz(actual, g, {5, t}));
        auto c = decode_lattice(extract_syndrome(g, l1), {0.1, 0.0}, g);
        c.apply_to(l1);
        EXPECT_TRUE(extract_syndrome(g, l1).empty());
    }
}

TEST(Decoder, RejectsBadWeights) {
    LatticeGeometry g(4);
    EXPECT_THROW(Decoder(g, AssumedWeights{-1.0, 1.0}), DomainError);
    EXPECT_THROW(Decoder(g, AssumedWeights{std::nan(""), 1.0}), DomainError);
}

// Matched decoding should not lose to a mismatched symmetric assumption.
TEST(Decoder, BiasMonotonicitySmoke) {
    const int n = 24;
    const int trials = 5000;
    LatticeGeometry g(n);
    IndependentXZModel actual(0.08, 0.01);
    Decoder matched(g, actual);
    Decoder symmetric(g, IndependentXZModel(0.045, 0.045));
    int fm = 0;
    int fs = 0;
    for (int t = 0; t < trials; ++t) {
        auto e = sample_xz(actual, g, {99, static_cast<std::uint64_t>(t)});
        fm += !matched.decode_and_classify(e).success;
        fs += !symmetric.decode_and_classify(e).success;
    }
    double pm = static_cast<double>(fm) / trials;
    double ps = static_cast<double>(fs) / trials;
    double sigma = std::sqrt((pm * (1 - pm) + ps * (1 - ps)) / trials);
    EXPECT_LE(pm, ps + 3 * sigma) << "matched " << fm << " symmetric " << fs;
}

}  // namespace
}  // namespace toric
