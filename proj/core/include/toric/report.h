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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "toric/harness.h"

namespace toric {

/// A finished sweep with its threshold estimate, or the reason there is none.
struct SweepSummary {
    SweepResult result;
    std::optional<ThresholdEstimate> estimate;
    std::string estimate_error;
};

SweepSummary summarize(SweepResult result);

/// Column names of the threshold CSV, in order.
const std::vector<std::string>& threshold_csv_columns();

/// '#'-prefixed config echo, one column header line, one row per (size, point)
/// of every sweep.
void write_threshold_csv(std::ostream& out, const std::vector<SweepSummary>& sweeps);

/// Overlay in the (p~_X, p~_Z) plane: zero-order and first-order
/// matched critical curves, the p~_X + p~_Z = 2 p_C line, the unrotated-code
/// box and Monte Carlo thresholds with error bars.
void write_figure_svg(std::ostream& out, const std::vector<SweepSummary>& sweeps);

/// Configs, seeds, per-point counts and threshold estimates.
void write_summary_json(std::ostream& out, const std::vector<SweepSummary>& sweeps);

struct ReportFiles {
    std::string csv;
    std::string svg;  ///< empty when nothing was plotted
    std::string json;
    std::vector<std::string> warnings;
};

/// Writes threshold.csv, figure2.svg and summary.json under `directory`,
/// creating it if needed. Throws std::runtime_error naming the path when a
/// file cannot be written.
ReportFiles emit_report(const std::vector<SweepSummary>& sweeps, const std::string& directory);

}  // namespace toric
