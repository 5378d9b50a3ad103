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
#include <bit>
#include <numbers>
#include <random>

#include "toric/error.h"
#include "toric/rbim_analytic.h"
#include "toric/roots.h"

namespace toric {
namespace {

double h2(double p) { return -(p * std::log2(p) + (1 - p) * std::log2(1 - p)); }

// Plain bisection on 2 H2(p) = 1, kept separate from the library solver.
double entropy_half_root() {
    double lo = 0.01;
    double hi = 0.3;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (2 * h2(mid) - 1 < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TEST(Couplings, RoundTripToMachinePrecision) {
    for (double px = 0.001; px < 0.5; px += 0.0173) {
        for (double pz = 0.0005; pz < 0.5; pz += 0.0291) {
            auto c = couplings_from_rates_xz(px, pz);
            EXPECT_NEAR(rate_from_coupling(c.j_h), px, 1e-14);
            EXPECT_NEAR(rate_from_coupling(c.j_v), pz, 1e-14);
            EXPECT_GT(c.j_h, 0.0);
        }
    }
}

TEST(Couplings, Examples) {
    auto sym = couplings_from_rates_xz(0.13, 0.13);
    EXPECT_EQ(sym.j_h, sym.j_v);
    auto c = couplings_from_rates_xz(1.0 / (2.0 + std::numbers::sqrt2), 0.1);
    EXPECT_NEAR(std::sinh(2 * c.j_h), 1.0, 1e-14);
    EXPECT_NEAR(c.j_h, 0.5 * std::log(1 + std::numbers::sqrt2), 1e-14);
    EXPECT_LT(couplings_from_rates_xz(0.5 - 1e-12, 0.1).j_h, 1e-11);
}

TEST(Couplings, DomainErrors) {
    EXPECT_THROW(couplings_from_rates_xz(0.0, 0.1), DomainError);
    EXPECT_THROW(couplings_from_rates_xz(0.1, 0.5), DomainError);
    EXPECT_THROW(couplings_from_rates_xz(-0.1, 0.1), DomainError);
}

TEST(SelfDual, IsotropicPoint) {
    double j = 0.5 * std::log(1 + std::numbers::sqrt2);
    EXPECT_NEAR(self_dual_check_xz({j, j}), 0.0, 1e-12);
    auto comp = self_dual_components({j, j});
    for (double r : comp.residuals) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(SelfDual, Limits) {
    EXPECT_NEAR(self_dual_check_xz({50.0, 0.7}), -std::tanh(0.7), 1e-12);
    EXPECT_LT(self_dual_check_xz({50.0, 0.7}), 0.0);
}

TEST(SelfDual, SwappedConditionHasSameRootsOnDiagonal) {
    auto f = [](double j) { return self_dual_check_xz({j, j}); };
    auto r = bisect(f, 0.1, 2.0);
    ASSERT_TRUE(r.found);
    EXPECT_NEAR(r.root, 0.5 * std::log(1 + std::numbers::sqrt2), 1e-9);
    // e^{-2 J_V} = tanh(J_H) on the diagonal is the same equation.
    EXPECT_NEAR(std::exp(-2 * r.root) - std::tanh(r.root), 0.0, 1e-9);
}

TEST(SelfDual, ComponentsVanishOnAnisotropicManifold) {
    for (double jh = 0.1; jh < 2.0; jh += 0.13) {
        CouplingsXZ c{jh, std::atanh(std::exp(-2 * jh))};
        EXPECT_NEAR(self_dual_check_xz(c), 0.0, 1e-14);
        auto comp = self_dual_components(c);
        for (double r : comp.residuals) EXPECT_NEAR(r, 0.0, 1e-10);
    }
    auto off = self_dual_components({0.3, 0.3});
    EXPECT_GT(std::fabs(off.residuals[2]), 1e-3);
}

TEST(Replica, SmallCases) {
    auto a = replica_vectors(2, 0.17, 0.8);
    EXPECT_NEAR(a.x[1], 1.0, 1e-15);
    auto b = replica_vectors(1, 0.0, 0.8);
    EXPECT_NEAR(b.x[0], std::exp(0.8), 1e-14);
    EXPECT_NEAR(b.x[1], std::exp(-0.8), 1e-14);
    EXPECT_NEAR(b.x_star[0], dual_bond_weight(0.8, 0), 1e-14);
    EXPECT_NEAR(b.x_star[1], dual_bond_weight(0.8, 1), 1e-14);
    EXPECT_THROW(replica_vectors(0, 0.1, 0.5), DomainError);
}

// Disorder average over tau of the product of n replicated single-bond
// weights, enumerated over every replica sign pattern.
TEST(Replica, MatchesSignPatternEnumeration) {
    const double pt = 0.13;
    const double j = 0.61;
    for (int n : {1, 2, 3, 4}) {
        auto r = replica_vectors(n, pt, j);
        for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
            int k = std::popcount(pattern);
            double x = 0.0;
            double xs = 0.0;
            for (int tau : {1, -1}) {
                double w = tau == 1 ? 1 - pt : pt;
                double prod = 1.0;
                double prod_star = 1.0;
                for (int a = 0; a < n; ++a) {
                    int anti = (pattern >> a) & 1;
                    prod *= std::exp(j * tau * (anti ? -1 : 1));
                    prod_star *= (std::exp(j * tau) + (anti ? -1.0 : 1.0) * std::exp(-j * tau)) / std::sqrt(2.0);
                }
                x += w * prod;
                xs += w * prod_star;
            }
            EXPECT_NEAR(r.x[k], x, 1e-12 * x);
            EXPECT_NEAR(r.x_star[k], xs, 1e-12 * std::fabs(xs) + 1e-15);
        }
    }
}

TEST(Replica, SmallNSlopeIsZeroOrderResidual) {
    for (auto [actual, assumed] : {std::pair<XZRates, XZRates>{{0.11, 0.11}, {0.11, 0.11}},
                                   {{0.2, 0.05}, {0.1, 0.1}},
                                   {{0.07, 0.16}, {0.03, 0.22}}}) {
        auto c = couplings_from_rates_xz(assumed.x, assumed.z);
        const double n = 1e-7;
        double slope = replica_conjecture_log_residual(n, actual, c) / (n * std::log(2.0));
        EXPECT_NEAR(slope, zero_order_critical(actual, assumed), 1e-6);
    }
}

TEST(ZeroOrder, SymmetricMatchedRootIsEntropyHalf) {
    double oracle = entropy_half_root();
    EXPECT_NEAR(oracle, 0.110028, 1e-6);
    auto pts = solve_critical_curve(CriticalEquation::ZeroOrder, {ratio_slice(1.0)});
    ASSERT_TRUE(pts[0].found);
    EXPECT_NEAR(pts[0].actual.x, oracle, 1e-9);
    EXPECT_NEAR(pts[0].root, 2 * oracle, 2e-9);
    EXPECT_LE(std::fabs(pts[0].residual), 1e-10);
    // On the quantum Hamming bound: 1 - 2 H2(p) = 0.
    EXPECT_NEAR(h2(pts[0].actual.x), 0.5, 1e-9);
}

TEST(ZeroOrder, EqualAssumedRatesReduceToHomogeneousMean) {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(0.01, 0.45);
    for (int i = 0; i < 200; ++i) {
        XZRates actual{u(rng), u(rng)};
        double p = u(rng);
        double mean = homogeneous_reduction(actual).p_tilde;
        EXPECT_NEAR(zero_order_critical(actual, {p, p}), zero_order_critical({mean, mean}, {p, p}), 1e-12);
    }
}

TEST(ZeroOrder, LogOfZeroThrows) {
    EXPECT_THROW(zero_order_critical({0.1, 0.1}, {0.0, 0.1}), DomainError);
    EXPECT_NO_THROW(zero_order_critical({0.0, 0.1}, {0.0, 0.1}));
}

TEST(HomogeneousReduction, Examples) {
    auto s = homogeneous_reduction({0.07, 0.07});
    EXPECT_NEAR(s.p_tilde, 0.07, 1e-15);
    EXPECT_NEAR(s.p, 0.07, 1e-15);
    auto a = homogeneous_reduction({0.2, 0.0});
    EXPECT_NEAR(a.p_tilde, 0.1, 1e-15);
    EXPECT_NEAR(a.p, (1 - std::sqrt(0.6)) / 2, 1e-15);
    EXPECT_NEAR(a.p, 0.11270, 1e-5);
}

// (1 - 2p)^2 = (1 - 2a)(1 - 2b) and AM-GM give p >= p~: the effective point
// sits at or above the Nishimori line p = p~.
TEST(HomogeneousReduction, AssumedRateNeverBelowMean) {
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (int i = 0; i < 10000; ++i) {
        auto h = homogeneous_reduction({u(rng), u(rng)});
        EXPECT_GE(h.p, h.p_tilde - 1e-15);
        EXPECT_GE(h.p_tilde, 0.0);
        EXPECT_LT(h.p, 0.5);
    }
}

TEST(SymmetricAssumption, Bounds) {
    auto b = symmetric_assumption_threshold();
    EXPECT_NEAR(b.sum_limit, 0.2184, 1e-12);
    EXPECT_TRUE(b.contains({0.109, 0.109}));
    EXPECT_FALSE(b.contains({0.1093, 0.1093}));
    EXPECT_TRUE(b.contains({0.218, 0.0}));
    EXPECT_FALSE(b.contains({0.2185, 0.0}));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 0.25);
    int strictly_larger = 0;
    for (int i = 0; i < 5000; ++i) {
        XZRates r{u(rng), u(rng)};
        if (unrotated_region_contains(r)) { EXPECT_TRUE(b.contains(r)); }
        strictly_larger += b.contains(r) && !unrotated_region_contains(r);
    }
    EXPECT_GT(strictly_larger, 0);
}

TEST(FirstOrder, WeightMatchesNegativePowerForm) {
    for (int n = 0; n <= 1; ++n) {
        for (int m = 0; m <= 2; ++m) {
            for (double r : {0.05, 0.2, 0.37}) {
                for (double s : {0.01, 0.11, 0.4}) {
                    double reference = std::pow(r, n) * std::pow(s, m) / (std::pow(1 - r, n - 2) * std::pow(1 - s, m - 2)) +
                                       std::pow(1 - r, n) * std::pow(1 - s, m) / (std::pow(r, n - 2) * std::pow(s, m - 2));
                    EXPECT_NEAR(first_order_weight(n, m, r, s), reference, 1e-14 * reference);
                }
            }
        }
    }
}

TEST(FirstOrder, SymmetricRootCloseToZeroOrder) {
    auto z = solve_critical_curve(CriticalEquation::ZeroOrder, {ratio_slice(1.0)});
    auto f = solve_critical_curve(CriticalEquation::FirstOrder, {ratio_slice(1.0)});
    ASSERT_TRUE(z[0].found && f[0].found);
    EXPECT_LT(std::fabs(f[0].actual.x - z[0].actual.x), 0.002);
    EXPECT_LE(std::fabs(f[0].residual), 1e-10);
}

TEST(FirstOrder, ExceedsZeroOrderSomewhereInAsymmetricRegime) {
    int exceeds = 0;
    for (double ratio : {2.0, 4.0, 8.0}) {
        auto z = solve_critical_curve(CriticalEquation::ZeroOrder, {ratio_slice(ratio)});
        auto f = solve_critical_curve(CriticalEquation::FirstOrder, {ratio_slice(ratio)});
        ASSERT_TRUE(z[0].found && f[0].found);
        exceeds += f[0].root > z[0].root;
        // Separation stays small: a few percent of the threshold.
        EXPECT_LT(std::fabs(f[0].root - z[0].root), 0.05 * z[0].root);
    }
    EXPECT_GT(exceeds, 0);
}

TEST(GeneralizedCouplings, Depolarizing) {
    const double q = 0.05;
    auto c = couplings_from_rates_xyz({q, q, q});
    // Every ratio in the coupling formulas reduces to (1 - 3q) / q.
    double expect = 0.25 * std::log((1 - 3 * q) / q);
    EXPECT_NEAR(c.j_h, expect, 1e-14);
    EXPECT_NEAR(c.j_v, expect, 1e-14);
    EXPECT_NEAR(c.j_y, expect, 1e-14);
}

TEST(GeneralizedCouplings, IndependentXZHasNoYCoupling) {
    for (double p : {0.03, 0.1, 0.2}) {
        auto c = couplings_from_rates_xyz(xz_to_general(p, p));
        auto xz = couplings_from_rates_xz(p, p);
        EXPECT_NEAR(c.j_h, xz.j_h, 1e-13);
        EXPECT_NEAR(c.j_v, xz.j_v, 1e-13);
        EXPECT_NEAR(c.j_y, 0.0, 1e-13);
    }
}

TEST(GeneralizedCouplings, ExponentialsRecovered) {
    GeneralPauliModel q(0.04, 0.015, 0.09);
    auto c = couplings_from_rates_xyz(q);
    double id = q.identity();
    EXPECT_NEAR(std::exp(4 * c.j_h), id * q.q_z() / (q.q_y() * q.q_x()), 1e-12 * std::exp(4 * c.j_h));
    EXPECT_NEAR(std::exp(4 * c.j_v), id * q.q_x() / (q.q_y() * q.q_z()), 1e-12 * std::exp(4 * c.j_v));
    EXPECT_NEAR(std::exp(4 * c.j_y), id * q.q_y() / (q.q_x() * q.q_z()), 1e-12 * std::exp(4 * c.j_y));
    EXPECT_THROW(couplings_from_rates_xyz({0.1, 0.0, 0.1}), InfiniteCouplingError);
    EXPECT_THROW(couplings_from_rates_xyz({0.0, 0.1, 0.1}), DomainError);
}

TEST(GeneralizedDuality, Examples) {
    auto u = generalized_duality_transform({1, 1, 1, 1});
    EXPECT_EQ(u, (std::array<double, 4>{2, 0, 0, 0}));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-5, 5);
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 4> v{d(rng), d(rng), d(rng), d(rng)};
        auto back = generalized_duality_transform(generalized_duality_transform(v));
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(back[k], v[k], 1e-12);
    }
}

TEST(GeneralizedDuality, SelfDualSurfaceIsFixed) {
    for (double j = 0.05; j < 1.5; j += 0.1) {
        double jy = -0.5 * std::log(std::sinh(2 * j));
        auto u = generalized_bond_weights({j, j, jy});
        auto us = generalized_duality_transform(u);
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(us[k], u[k], 1e-12 * u[0]);
    }
}

TEST(GeneralizedZeroOrder, Examples) {
    EXPECT_NEAR(generalized_zero_order({0.25, 0.25, 0.25}), -1.0, 1e-14);
    EXPECT_NEAR(generalized_zero_order({0.18929 / 3, 0.18929 / 3, 0.18929 / 3}), 0.0, 1e-4);
    for (double p : {0.02, 0.08, 0.11, 0.3}) {
        EXPECT_NEAR(generalized_zero_order(xz_to_general(p, p)), zero_order_critical({p, p}, {p, p}), 1e-9);
    }
}

TEST(Depolarizing, Thresholds) {
    double opt = depolarizing_optimal_threshold();
    EXPECT_NEAR(opt, 0.18929, 5e-4);
    EXPECT_NEAR(generalized_zero_order({opt / 3, opt / 3, opt / 3}), 0.0, 1e-10);
    double mw = mwpm_depolarizing_estimate();
    EXPECT_NEAR(mw, 0.165, 1e-3);
    double q = mw / 3;
    EXPECT_LE(std::fabs((1 - 2 * q) * std::log2(1 - 2 * q) + 2 * q * std::log2(2 * q) + 0.5), 1e-10);
    EXPECT_LT(mw, opt);
}

TEST(CriticalCurve, PureXSliceHitsTheBoundary) {
    auto pts = solve_critical_curve(CriticalEquation::ZeroOrder, {ratio_slice(INFINITY)});
    ASSERT_TRUE(pts[0].found);
    EXPECT_NEAR(pts[0].actual.x, 0.5, 1e-9);
    EXPECT_EQ(pts[0].actual.z, 0.0);
}

TEST(CriticalCurve, RatioSweep) {
    std::vector<CurveSlice> slices;
    for (double r : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) slices.push_back(ratio_slice(r));
    for (auto eq : {CriticalEquation::ZeroOrder, CriticalEquation::FirstOrder}) {
        auto pts = solve_critical_curve(eq, slices);
        ASSERT_EQ(pts.size(), slices.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            ASSERT_TRUE(pts[i].found) << pts[i].note;
            EXPECT_LE(std::fabs(pts[i].residual), 1e-10);
            EXPECT_NEAR(pts[i].actual.x / pts[i].actual.z, slices[i].slice_param, 1e-9);
        }
        // Mirror slices give mirrored points.
        EXPECT_NEAR(pts[0].root, pts[6].root, 1e-9);
        EXPECT_NEAR(pts[2].root, pts[4].root, 1e-9);
    }
}

TEST(CriticalCurve, NoSignChangeIsReportedNotThrown) {
    auto slice = ratio_slice(1.0, AnalyticAssumption::Fixed);
    slice.fixed_assumed = {0.49, 0.49};
    auto pts = solve_critical_curve(CriticalEquation::ZeroOrder, {slice});
    EXPECT_FALSE(pts[0].found);
    EXPECT_FALSE(pts[0].note.empty());
}

TEST(CriticalCurve, SymmetricAverageAssumptionIsFlat) {
    for (double r : {1.0, 4.0, 8.0}) {
        auto pts = solve_critical_curve(CriticalEquation::ZeroOrder, {ratio_slice(r, AnalyticAssumption::SymmetricAverage)});
        ASSERT_TRUE(pts[0].found);
        EXPECT_NEAR(pts[0].root, 2 * entropy_half_root(), 1e-8);
    }
}

TEST(Bisect, Contract) {
    auto r = bisect([](double x) { return x * x - 2; }, 0.0, 3.0);
    ASSERT_TRUE(r.found);
    EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-10);
    EXPECT_FALSE(bisect([](double x) { return x * x + 1; }, -1.0, 1.0).found);
    EXPECT_FALSE(bisect([](double x) { return std::sin(x); }, -1.0, 7.0).found);
}

}  // namespace
}  // namespace toric
