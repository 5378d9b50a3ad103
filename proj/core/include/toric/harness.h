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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/noise.h"
#include "toric/rbim_analytic.h"

namespace toric {

enum class AssumedPolicyKind { Matched, SymmetricAverage, SymmetricHomogeneous, Fixed };

/// How the decoder's assumed rates are derived from the actual ones.
struct AssumedPolicy {
    AssumedPolicyKind kind = AssumedPolicyKind::Matched;
    XZRates fixed;

    /// matched | symmetric | symmetric_average | symmetric_homogeneous | px,pz
    static AssumedPolicy parse(const std::string& text);
    std::string to_string() const;
    IndependentXZModel resolve(const XZRates& actual) const;
};

/// One point of a sweep. `rate` is the abscissa of the curve: the total rate
/// p~_X + p~_Z.
struct RatePoint {
    double rate = 0.0;
    XZRates actual;
};

/// Points along p~_X / p~_Z = ratio at the given total rates. ratio may be
/// infinity (pure X).
std::vector<RatePoint> ratio_points(double ratio, const std::vector<double>& totals);

/// "a:b:step" (inclusive) or "a,b,c".
std::vector<double> parse_grid(const std::string& text);

struct ExperimentConfig {
    std::vector<int> sizes{16, 24, 32};
    std::vector<RatePoint> points;
    double ratio = 1.0;
    AssumedPolicy assumed;
    int trials = 2000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;

    /// Throws DomainError or StructuralError on an unusable config.
    void validate() const;

    /// Resolved settings, in a fixed order, for echoing into outputs.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Applies one key=value setting. Keys: sizes, ratio, grid, px, pz, assumed,
/// trials, seed, workers, out. `grid` is expanded with the ratio in effect
/// when the config is finalized, so ordering of keys does not matter.
class ConfigBuilder {
   public:
    ConfigBuilder();
    void set(const std::string& key, const std::string& value);
    /// Reads a flat key=value file; '#' starts a comment.
    void read(std::istream& in);
    void read_file(const std::string& path);
    ExperimentConfig build() const;

   private:
    std::map<std::string, std::string> values_;
};

/// Trial counter for trial t at point p. Independent of the lattice size and
/// the assumed policy, so sweeps that differ only in those see the same
/// sample streams.
inline std::uint64_t trial_index(std::size_t point, int trial) {
    return (static_cast<std::uint64_t>(point) << 32) + static_cast<std::uint32_t>(trial);
}

struct CurvePoint {
    double rate = 0.0;
    XZRates actual;
    XZRates assumed;
    int n = 0;
    int trials = 0;
    int failures = 0;
    int failures_l1 = 0;
    int failures_l2 = 0;

    double failure_probability() const { return trials > 0 ? static_cast<double>(failures) / trials : 0.0; }
    /// sqrt(f (1 - f) / trials)
    double standard_error() const;
};

struct ThresholdEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
    std::vector<double> pair_crossings;
};

struct ThresholdCurve {
    int n = 0;
    std::vector<CurvePoint> points;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<ThresholdCurve> curves;  ///< one per size, in config order
};

/// Runs every (size, point, trial). Output depends only on the config, never
/// on `workers`. Progress lines go to `log` when given.
SweepResult run_sweep(const ExperimentConfig& config, std::ostream* log = nullptr);

/// A curve from given failure probabilities, for tests and offline data.
ThresholdCurve synthetic_curve(int n, const std::vector<double>& rates, const std::vector<double>& failure,
                               int trials);

/// Crossing of linearly interpolated failure curves for each consecutive size
/// pair, averaged. Throws PreconditionError for fewer than two curves and
/// InsufficientDataError naming the size when a curve does not span
/// min < 0.2, max > 0.4 or a pair does not cross inside the grid.
ThresholdEstimate estimate_threshold(std::vector<ThresholdCurve> curves);

}  // namespace toric
