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
#include <string>
#include <vector>

#include "toric/noise.h"
#include "toric/roots.h"

namespace toric {

/// Known location of the RBIM multicritical point. A reference value for
/// reports and bounds only; no solver uses it.
inline constexpr double kMulticriticalRate = 0.1092;

struct XZRates {
    double x = 0.0;
    double z = 0.0;
};

/// x * log2(y), with 0 * log2(0) = 0. Throws DomainError when x != 0 and y <= 0.
double xlog2y(double x, double y);

/// H2(p) in bits.
double binary_entropy(double p);

// --- Independent X/Z model ----------------------------------------------------

/// Couplings with (1 - p) / p = exp(2 J).
struct CouplingsXZ {
    double j_h = 0.0;
    double j_v = 0.0;
};

/// Throws DomainError unless both rates lie in (0, 1/2).
CouplingsXZ couplings_from_rates_xz(double p_x, double p_z);

/// Inverse of the coupling map: p = 1 / (1 + exp(2 J)).
double rate_from_coupling(double j);

/// exp(-2 j_h) - tanh(j_v); zero exactly on the self-dual manifold.
double self_dual_check_xz(const CouplingsXZ& c);

/// Single-bond duality weights. u(tau) = exp(J tau), and
/// sqrt(2) u*(s) = exp(J) + (-1)^s exp(-J).
double bond_weight(double j, int tau);
double dual_bond_weight(double j, int s);

/// Component check of u_q(tau) = u*_q((1 - tau) / 2), where a horizontal
/// primal bond faces a vertical dual bond. Each family may differ by a
/// constant gauge factor; the gauges multiply to one at self-duality.
struct SelfDualComponents {
    double gauge_h = 0.0;  ///< u_V(+1) / u*_H(0)
    double gauge_v = 0.0;  ///< u_H(+1) / u*_V(0)
    /// u_V(-1) - gauge_h u*_H(1), u_H(-1) - gauge_v u*_V(1), gauge_h gauge_v - 1.
    std::array<double, 3> residuals{};
};
SelfDualComponents self_dual_components(const CouplingsXZ& c);

/// Replica vectors for one bond family: x[k] is the disorder-averaged weight
/// of a replicated bond with k of the n copies antiparallel, x_star[k] its
/// dual.
struct ReplicaVector {
    int n = 0;
    std::vector<double> x;
    std::vector<double> x_star;
};

/// actual_rate is the true flip probability of this bond family, coupling the
/// decoder's J for it.
ReplicaVector replica_vectors(int n, double actual_rate, double coupling);

/// ln(x0^H x0^V) - ln(x0*^H x0*^V) for a real replica number n > 0. Its
/// n -> 0 slope divided by ln 2 is the zero-order residual.
double replica_conjecture_log_residual(double n, const XZRates& actual, const CouplingsXZ& couplings);

/// p~_H log2 p_H + (1 - p~_H) log2(1 - p_H) + (same for V) + 1.
double zero_order_critical(const XZRates& actual, const XZRates& assumed);

struct HomogeneousPoint {
    double p_tilde = 0.0;  ///< mean actual rate
    double p = 0.0;        ///< rate with (1 - 2p)^2 = (1 - 2p~_X)(1 - 2p~_Z)
};
HomogeneousPoint homogeneous_reduction(const XZRates& actual);

/// Sum-rate bound p~_X + p~_Z < 2 p_C for decoding with equal assumed rates.
struct SumRateBound {
    double sum_limit = 0.0;
    bool contains(const XZRates& actual) const { return actual.x + actual.z < sum_limit; }
};
SumRateBound symmetric_assumption_threshold();

/// Region max(p~_X, p~_Z) < p_C of the unrotated code.
bool unrotated_region_contains(const XZRates& actual);

/// a_nm(r, s) exactly as used in the first-order correction.
double first_order_weight(int n, int m, double r, double s);

/// Residual of the first-order corrected critical equation. The p inside
/// (1 - 2p)^4 is the homogeneous-reduction p of the actual rates.
double first_order_critical(const XZRates& actual, const XZRates& assumed);

// --- General Pauli model ------------------------------------------------------

struct CouplingsXYZ {
    double j_h = 0.0;
    double j_v = 0.0;
    double j_y = 0.0;
};

/// Throws InfiniteCouplingError when any of the four probabilities is zero.
CouplingsXYZ couplings_from_rates_xyz(const GeneralPauliModel& q);

/// (e^{J_H+J_V+J_Y}, e^{J_H-J_V-J_Y}, e^{-J_H+J_V-J_Y}, e^{-J_H-J_V+J_Y}).
std::array<double, 4> generalized_bond_weights(const CouplingsXYZ& c);

/// u* = M u / 2 with M the symmetric 4x4 Hadamard sign matrix; an involution.
std::array<double, 4> generalized_duality_transform(const std::array<double, 4>& u);

/// Shannon entropy of the four-outcome channel minus one bit, negated:
/// (1 - sum q) log2(1 - sum q) + sum q log2 q + 1.
double generalized_zero_order(const GeneralPauliModel& q);

/// 3q at which depolarizing noise hits the generalized zero-order surface.
double depolarizing_optimal_threshold();

/// 3q for MWPM on depolarizing noise: root of
/// -1/2 = (1 - 2q) log2(1 - 2q) + 2q log2(2q).
double mwpm_depolarizing_estimate();

// --- Curve solving -------------------------------------------------------------

enum class CriticalEquation { ZeroOrder, FirstOrder, Generalized };
const char* to_string(CriticalEquation e);

enum class AnalyticAssumption {
    Matched,               ///< assumed = actual
    SymmetricHomogeneous,  ///< p_X = p_Z = homogeneous-reduction p
    SymmetricAverage,      ///< p_X = p_Z = (p~_X + p~_Z) / 2
    Fixed,                 ///< fixed assumed rates
};
const char* to_string(AnalyticAssumption a);

/// A 1D slice of parameter space. For the X/Z equations the actual rates are
/// s * (direction_x, direction_z); for the generalized equation q~ is
/// s * direction_q. The root is reported in s.
struct CurveSlice {
    double slice_param = 0.0;
    double direction_x = 0.5;
    double direction_z = 0.5;
    std::array<double, 3> direction_q{1.0, 1.0, 1.0};
    AnalyticAssumption assumption = AnalyticAssumption::Matched;
    XZRates fixed_assumed;
};

/// Slice with p~_X / p~_Z = ratio (ratio may be 0 or infinity).
CurveSlice ratio_slice(double ratio, AnalyticAssumption assumption = AnalyticAssumption::Matched);

struct CriticalPoint {
    CriticalEquation equation = CriticalEquation::ZeroOrder;
    double slice_param = 0.0;
    bool found = false;
    double root = 0.0;  ///< s along the slice
    double residual = 0.0;
    XZRates actual;
    XZRates assumed;
    std::array<double, 3> q{};
    std::string note;
};

XZRates assumed_rates(AnalyticAssumption assumption, const XZRates& actual, const XZRates& fixed);

/// Residual of `equation` at parameter s along `slice`.
double slice_residual(CriticalEquation equation, const CurveSlice& slice, double s);

/// Bisects every slice. Slices without a sign change come back with
/// found = false and a note instead of throwing.
std::vector<CriticalPoint> solve_critical_curve(CriticalEquation equation, const std::vector<CurveSlice>& slices,
                                                double tolerance = kRootTolerance);

}  // namespace toric
