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

#include "toric/rbim_analytic.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "toric/error.h"

namespace toric {

double xlog2y(double x, double y) {
    if (x == 0.0) return 0.0;
    if (!(y > 0.0)) throw DomainError("log2 of nonpositive argument " + std::to_string(y));
    return x * std::log2(y);
}

double binary_entropy(double p) { return -xlog2y(p, p) - xlog2y(1.0 - p, 1.0 - p); }

namespace {

void check_open_half(double p, const char* name) {
    if (!(p > 0.0 && p < 0.5)) {
        throw DomainError(std::string(name) + " must lie in (0, 0.5), got " + std::to_string(p));
    }
}

void check_closed_half(double p, const char* name) {
    if (!(p >= 0.0 && p <= 0.5)) {
        throw DomainError(std::string(name) + " must lie in [0, 0.5], got " + std::to_string(p));
    }
}

}  // namespace

CouplingsXZ couplings_from_rates_xz(double p_x, double p_z) {
    check_open_half(p_x, "p_x");
    check_open_half(p_z, "p_z");
    return {0.5 * std::log((1.0 - p_x) / p_x), 0.5 * std::log((1.0 - p_z) / p_z)};
}

double rate_from_coupling(double j) { return 1.0 / (1.0 + std::exp(2.0 * j)); }

double self_dual_check_xz(const CouplingsXZ& c) { return std::exp(-2.0 * c.j_h) - std::tanh(c.j_v); }

double bond_weight(double j, int tau) { return std::exp(j * tau); }

double dual_bond_weight(double j, int s) {
    return (std::exp(j) + (s % 2 == 0 ? 1.0 : -1.0) * std::exp(-j)) / std::numbers::sqrt2;
}

SelfDualComponents self_dual_components(const CouplingsXZ& c) {
    SelfDualComponents out;
    out.gauge_h = bond_weight(c.j_v, +1) / dual_bond_weight(c.j_h, 0);
    out.gauge_v = bond_weight(c.j_h, +1) / dual_bond_weight(c.j_v, 0);
    out.residuals[0] = bond_weight(c.j_v, -1) - out.gauge_h * dual_bond_weight(c.j_h, 1);
    out.residuals[1] = bond_weight(c.j_h, -1) - out.gauge_v * dual_bond_weight(c.j_v, 1);
    out.residuals[2] = out.gauge_h * out.gauge_v - 1.0;
    return out;
}

ReplicaVector replica_vectors(int n, double actual_rate, double coupling) {
    if (n < 1) throw DomainError("replica number must be positive");
    ReplicaVector r;
    r.n = n;
    r.x.resize(n + 1);
    r.x_star.resize(n + 1);
    const double pt = actual_rate;
    const double scale = std::pow(std::numbers::sqrt2 * std::cosh(coupling), n);
    const double t = std::tanh(coupling);
    for (int k = 0; k <= n; ++k) {
        const double e = (n - 2 * k) * coupling;
        r.x[k] = (1.0 - pt) * std::exp(e) + pt * std::exp(-e);
        r.x_star[k] = scale * std::pow(t, k) * ((1.0 - pt) + (k % 2 == 0 ? pt : -pt));
    }
    return r;
}

double replica_conjecture_log_residual(double n, const XZRates& actual, const CouplingsXZ& couplings) {
    auto log_x0 = [n](double pt, double j) {
        // ln((1 - pt) e^{nJ} + pt e^{-nJ}) without overflow for large nJ.
        double a = n * j;
        return a + std::log((1.0 - pt) + pt * std::exp(-2.0 * a));
    };
    auto log_x0_star = [n](double j) { return n * (0.5 * std::log(2.0) + std::log(std::cosh(j))); };
    return log_x0(actual.x, couplings.j_h) + log_x0(actual.z, couplings.j_v) - log_x0_star(couplings.j_h) -
           log_x0_star(couplings.j_v);
}

double zero_order_critical(const XZRates& actual, const XZRates& assumed) {
    return xlog2y(actual.x, assumed.x) + xlog2y(1.0 - actual.x, 1.0 - assumed.x) + xlog2y(actual.z, assumed.z) +
           xlog2y(1.0 - actual.z, 1.0 - assumed.z) + 1.0;
}

HomogeneousPoint homogeneous_reduction(const XZRates& actual) {
    check_closed_half(actual.x, "p~_X");
    check_closed_half(actual.z, "p~_Z");
    HomogeneousPoint h;
    h.p_tilde = 0.5 * (actual.x + actual.z);
    h.p = 0.5 * (1.0 - std::sqrt((1.0 - 2.0 * actual.x) * (1.0 - 2.0 * actual.z)));
    return h;
}

SumRateBound symmetric_assumption_threshold() { return {2.0 * kMulticriticalRate}; }

bool unrotated_region_contains(const XZRates& actual) {
    return std::max(actual.x, actual.z) < kMulticriticalRate;
}

double first_order_weight(int n, int m, double r, double s) {
    // Written with positive powers so that r or s = 0 is well defined.
    return std::pow(r, n) * std::pow(s, m) * std::pow(1.0 - r, 2 - n) * std::pow(1.0 - s, 2 - m) +
           std::pow(1.0 - r, n) * std::pow(1.0 - s, m) * std::pow(r, 2 - n) * std::pow(s, 2 - m);
}

double first_order_critical(const XZRates& actual, const XZRates& assumed) {
    const double p = homogeneous_reduction(actual).p;
    const double t = std::pow(1.0 - 2.0 * p, 4);
    double lhs = 0.0;
    for (double eta : {1.0, -1.0}) lhs += 0.5 * xlog2y(1.0 + eta * t, 1.0 + eta * t);
    constexpr double kBinom[3] = {1.0, 2.0, 1.0};
    double sum = 0.0;
    for (int n = 0; n <= 1; ++n) {
        for (int m = 0; m <= 2; ++m) {
            double a_actual = first_order_weight(n, m, actual.x, actual.z);
            double a_assumed = first_order_weight(n, m, assumed.x, assumed.z);
            sum += kBinom[m] * xlog2y(a_actual, a_assumed);
        }
    }
    return 2.0 - lhs + sum;
}

CouplingsXYZ couplings_from_rates_xyz(const GeneralPauliModel& q) {
    const double id = q.identity();
    if (q.q_x() == 0.0 || q.q_y() == 0.0 || q.q_z() == 0.0 || id <= 0.0) {
        throw InfiniteCouplingError("couplings diverge when a Pauli channel probability is zero");
    }
    return {0.25 * std::log(id * q.q_z() / (q.q_y() * q.q_x())), 0.25 * std::log(id * q.q_x() / (q.q_y() * q.q_z())),
            0.25 * std::log(id * q.q_y() / (q.q_x() * q.q_z()))};
}

std::array<double, 4> generalized_bond_weights(const CouplingsXYZ& c) {
    return {std::exp(c.j_h + c.j_v + c.j_y), std::exp(c.j_h - c.j_v - c.j_y), std::exp(-c.j_h + c.j_v - c.j_y),
            std::exp(-c.j_h - c.j_v + c.j_y)};
}

std::array<double, 4> generalized_duality_transform(const std::array<double, 4>& u) {
    constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) acc += kSign[i][j] * u[j];
        out[i] = 0.5 * acc;
    }
    return out;
}

double generalized_zero_order(const GeneralPauliModel& q) {
    const double id = q.identity();
    return xlog2y(id, id) + xlog2y(q.q_x(), q.q_x()) + xlog2y(q.q_y(), q.q_y()) + xlog2y(q.q_z(), q.q_z()) + 1.0;
}

double depolarizing_optimal_threshold() {
    auto f = [](double t) { return generalized_zero_order(GeneralPauliModel(t / 3, t / 3, t / 3)); };
    auto r = bisect(f, 1e-9, 0.75);
    if (!r.found) throw DomainError("depolarizing threshold bracket failed: " + r.reason);
    return r.root;
}

double mwpm_depolarizing_estimate() {
    // With p = 2q the equation is H2(2q) = 1/2.
    auto f = [](double q) { return xlog2y(1.0 - 2.0 * q, 1.0 - 2.0 * q) + xlog2y(2.0 * q, 2.0 * q) + 0.5; };
    auto r = bisect(f, 1e-9, 0.25);
    if (!r.found) throw DomainError("MWPM depolarizing bracket failed: " + r.reason);
    return 3.0 * r.root;
}

const char* to_string(CriticalEquation e) {
    switch (e) {
        case CriticalEquation::ZeroOrder:
            return "zero_order";
        case CriticalEquation::FirstOrder:
            return "first_order";
        default:
            return "generalized";
    }
}

const char* to_string(AnalyticAssumption a) {
    switch (a) {
        case AnalyticAssumption::Matched:
            return "matched";
        case AnalyticAssumption::SymmetricHomogeneous:
            return "symmetric_homogeneous";
        case AnalyticAssumption::SymmetricAverage:
            return "symmetric_average";
        default:
            return "fixed";
    }
}

CurveSlice ratio_slice(double ratio, AnalyticAssumption assumption) {
    if (!(ratio >= 0.0)) throw DomainError("ratio must be nonnegative");
    CurveSlice s;
    s.slice_param = ratio;
    if (std::isinf(ratio)) {
        s.direction_x = 1.0;
        s.direction_z = 0.0;
    } else {
        s.direction_x = ratio / (1.0 + ratio);
        s.direction_z = 1.0 / (1.0 + ratio);
    }
    s.assumption = assumption;
    return s;
}

XZRates assumed_rates(AnalyticAssumption assumption, const XZRates& actual, const XZRates& fixed) {
    switch (assumption) {
        case AnalyticAssumption::Matched:
            return actual;
        case AnalyticAssumption::SymmetricHomogeneous: {
            double p = homogeneous_reduction(actual).p;
            return {p, p};
        }
        case AnalyticAssumption::SymmetricAverage: {
            double p = 0.5 * (actual.x + actual.z);
            return {p, p};
        }
        default:
            return fixed;
    }
}

namespace {

double slice_upper(CriticalEquation equation, const CurveSlice& slice) {
    if (equation == CriticalEquation::Generalized) {
        double sum = slice.direction_q[0] + slice.direction_q[1] + slice.direction_q[2];
        return 0.5 / sum;
    }
    return 0.5 / std::max(slice.direction_x, slice.direction_z);
}

constexpr double kSliceLower = 1e-9;

}  // namespace

double slice_residual(CriticalEquation equation, const CurveSlice& slice, double s) {
    if (equation == CriticalEquation::Generalized) {
        const auto& d = slice.direction_q;
        return generalized_zero_order(GeneralPauliModel(s * d[0], s * d[1], s * d[2]));
    }
    XZRates actual{s * slice.direction_x, s * slice.direction_z};
    XZRates assumed = assumed_rates(slice.assumption, actual, slice.fixed_assumed);
    return equation == CriticalEquation::ZeroOrder ? zero_order_critical(actual, assumed)
                                                   : first_order_critical(actual, assumed);
}

std::vector<CriticalPoint> solve_critical_curve(CriticalEquation equation, const std::vector<CurveSlice>& slices,
                                                double tolerance) {
    std::vector<CriticalPoint> out;
    out.reserve(slices.size());
    for (const auto& slice : slices) {
        CriticalPoint cp;
        cp.equation = equation;
        cp.slice_param = slice.slice_param;
        try {
            if (equation == CriticalEquation::Generalized) {
                const auto& d = slice.direction_q;
                if (d[0] < 0 || d[1] < 0 || d[2] < 0 || d[0] + d[1] + d[2] <= 0) {
                    throw DomainError("generalized slice direction must be nonnegative and nonzero");
                }
            } else if (slice.direction_x < 0 || slice.direction_z < 0 ||
                       slice.direction_x + slice.direction_z <= 0) {
                throw DomainError("slice direction must be nonnegative and nonzero");
            }
            auto f = [&](double s) { return slice_residual(equation, slice, s); };
            auto r = bisect(f, kSliceLower, slice_upper(equation, slice), tolerance);
            cp.found = r.found;
            cp.root = r.root;
            cp.residual = r.residual;
            cp.note = r.reason;
            if (r.found) {
                if (equation == CriticalEquation::Generalized) {
                    for (int i = 0; i < 3; ++i) cp.q[i] = r.root * slice.direction_q[i];
                } else {
                    cp.actual = {r.root * slice.direction_x, r.root * slice.direction_z};
                    cp.assumed = assumed_rates(slice.assumption, cp.actual, slice.fixed_assumed);
                }
            }
        } catch (const DomainError& e) {
            cp.found = false;
            cp.note = e.what();
        }
        out.push_back(cp);
    }
    return out;
}

}  // namespace toric
