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

#include "toric/error.h"
#include "toric/lattice.h"
#include "toric/noise.h"
#include "toric/philox.h"

namespace toric {
namespace {

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswers) {
    auto zero = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(zero, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    auto ones = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(ones, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    auto pi = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(pi, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, StreamsAreIndependentOfOrder) {
    CounterStream a(42, 7, 1);
    CounterStream b(42, 7, 1);
    CounterStream other(42, 8, 1);
    int differ = 0;
    for (int i = 0; i < 100; ++i) {
        auto x = a.next_u32();
        EXPECT_EQ(x, b.next_u32());
        differ += x != other.next_u32();
    }
    EXPECT_GT(differ, 95);
}

TEST(IndependentXZModel, Validation) {
    EXPECT_NO_THROW(IndependentXZModel(0.0, 0.499));
    EXPECT_THROW(IndependentXZModel(0.5, 0.1), DomainError);
    EXPECT_THROW(IndependentXZModel(0.1, -0.01), DomainError);
    EXPECT_THROW(IndependentXZModel(std::nan(""), 0.1), DomainError);
}

TEST(GeneralPauliModel, Validation) {
    EXPECT_NO_THROW(GeneralPauliModel(0.3, 0.3, 0.3));
    EXPECT_THROW(GeneralPauliModel(0.5, 0.3, 0.2), DomainError);
    EXPECT_THROW(GeneralPauliModel(-0.1, 0.0, 0.0), DomainError);
    EXPECT_NEAR(GeneralPauliModel(0.1, 0.2, 0.3).identity(), 0.4, 1e-15);
}

TEST(SampleXZ, ZeroRatesGiveNoErrors) {
    LatticeGeometry g(10);
    auto e = sample_xz({0.0, 0.0}, g, {123, 4});
    EXPECT_EQ(e.count_x(), 0u);
    EXPECT_EQ(e.count_z(), 0u);
}

TEST(SampleXZ, FrequencyWithinFiveSigma) {
    LatticeGeometry g(224);  // 100352 qubits
    auto e = sample_xz({0.0, 0.1}, g, {9, 0});
    EXPECT_EQ(e.count_x(), 0u);
    double n = static_cast<double>(e.size());
    double sigma = std::sqrt(n * 0.1 * 0.9);
    EXPECT_LT(std::fabs(e.count_z() - 0.1 * n), 5 * sigma);
}

TEST(SampleXZ, Deterministic) {
    LatticeGeometry g(12);
    IndependentXZModel m(0.2, 0.15);
    auto a = sample_xz(m, g, {77, 5});
    auto b = sample_xz(m, g, {77, 5});
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == sample_xz(m, g, {77, 6}));
    EXPECT_FALSE(a == sample_xz(m, g, {78, 5}));
    PauliErrorPattern c;
    sample_xz_into(c, m, g, {77, 5});
    EXPECT_EQ(a, c);
}

TEST(SampleXZ, MillionDrawConvergence) {
    LatticeGeometry g(708);  // 1002528 qubits
    IndependentXZModel m(0.07, 0.23);
    auto e = sample_xz(m, g, {2024, 1});
    double n = static_cast<double>(e.size());
    EXPECT_LT(std::fabs(e.count_x() - 0.07 * n), 5 * std::sqrt(n * 0.07 * 0.93));
    EXPECT_LT(std::fabs(e.count_z() - 0.23 * n), 5 * std::sqrt(n * 0.23 * 0.77));
}

TEST(SampleGeneral, Basics) {
    LatticeGeometry g(20);
    auto clear = sample_general({0.0, 0.0, 0.0}, g, {1, 1});
    EXPECT_EQ(clear.count_x() + clear.count_z(), 0u);

    auto ys = sample_general({0.0, 0.2, 0.0}, g, {1, 2});
    EXPECT_GT(ys.count_x(), 0u);
    for (std::size_t q = 0; q < ys.size(); ++q) EXPECT_EQ(ys.x(q), ys.z(q));
}

TEST(SampleGeneral, FrequenciesWithinFiveSigma) {
    LatticeGeometry g(708);
    GeneralPauliModel m(0.05, 0.02, 0.11);
    auto e = sample_general(m, g, {31, 0});
    double n = static_cast<double>(e.size());
    std::size_t cx = 0, cy = 0, cz = 0;
    for (std::size_t q = 0; q < e.size(); ++q) {
        if (e.y(q)) ++cy;
        else if (e.x(q)) ++cx;
        else if (e.z(q)) ++cz;
    }
    for (auto [count, p] : {std::pair{cx, 0.05}, {cy, 0.02}, {cz, 0.11}}) {
        EXPECT_LT(std::fabs(count - p * n), 5 * std::sqrt(n * p * (1 - p)));
    }
}

// Chi-squared over the four outcomes {I, X, Y, Z}, 3 degrees of freedom.
double chi_squared(const PauliErrorPattern& e, const std::array<double, 4>& p) {
    std::array<double, 4> obs{};
    for (std::size_t q = 0; q < e.size(); ++q) obs[(e.x(q) ? 1 : 0) + (e.z(q) ? 2 : 0)] += 1;
    double chi = 0.0;
    for (int k = 0; k < 4; ++k) {
        double expect = p[k] * static_cast<double>(e.size());
        chi += (obs[k] - expect) * (obs[k] - expect) / expect;
    }
    return chi;
}

TEST(SampleGeneral, CompositionMatchesIndependentXZ) {
    const double px = 0.12;
    const double pz = 0.07;
    auto q = xz_to_general(px, pz);
    // Outcome order: I, X only, Z only, Y.
    std::array<double, 4> p{q.identity(), q.q_x(), q.q_z(), q.q_y()};
    LatticeGeometry g(224);
    // 16.27 is the 0.999 quantile of chi-squared with 3 degrees of freedom.
    EXPECT_LT(chi_squared(sample_xz({px, pz}, g, {5, 0}), p), 16.27);
    EXPECT_LT(chi_squared(sample_general(q, g, {5, 0}), p), 16.27);
}

TEST(XZToGeneral, Examples) {
    auto zero = xz_to_general(0.0, 0.0);
    EXPECT_EQ(zero.q_x() + zero.q_y() + zero.q_z(), 0.0);
    auto a = xz_to_general(0.1, 0.1);
    EXPECT_NEAR(a.q_x(), 0.09, 1e-15);
    EXPECT_NEAR(a.q_y(), 0.01, 1e-15);
    EXPECT_NEAR(a.q_z(), 0.09, 1e-15);
    auto b = xz_to_general(0.5 - 1e-9, 0.0);
    EXPECT_NEAR(b.q_x(), 0.5 - 1e-9, 1e-15);
    EXPECT_EQ(b.q_y(), 0.0);
    EXPECT_EQ(b.q_z(), 0.0);
    // Marginals: P(x flag) = q_x + q_y.
    auto c = xz_to_general(0.13, 0.31);
    EXPECT_NEAR(c.q_x() + c.q_y(), 0.13, 1e-15);
    EXPECT_NEAR(c.q_z() + c.q_y(), 0.31, 1e-15);
}

}  // namespace
}  // namespace toric
