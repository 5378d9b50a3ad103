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

#include "toric/report.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "toric/error.h"

namespace toric {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string ratio_text(double r) { return std::isinf(r) ? "inf" : num(r); }

}  // namespace

SweepSummary summarize(SweepResult result) {
    SweepSummary s;
    s.result = std::move(result);
    try {
        s.estimate = estimate_threshold(s.result.curves);
    } catch (const std::exception& e) {
        s.estimate_error = e.what();
    }
    return s;
}

const std::vector<std::string>& threshold_csv_columns() {
    static const std::vector<std::string> cols{
        "sweep",      "assumed",    "ratio",  "n",        "rate",        "actual_px",           "actual_pz",
        "assumed_px", "assumed_pz", "trials", "failures", "failures_l1", "failures_l2", "failure_probability",
        "stderr"};
    return cols;
}

void write_threshold_csv(std::ostream& out, const std::vector<SweepSummary>& sweeps) {
    out << "# toric threshold sweep\n";
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
        out << "# sweep " << i << ":";
        for (const auto& [k, v] : sweeps[i].result.config.echo()) out << " " << k << "=" << v;
        out << "\n";
        if (sweeps[i].estimate) {
            out << "# sweep " << i << " threshold=" << num(sweeps[i].estimate->value)
                << " uncertainty=" << num(sweeps[i].estimate->uncertainty) << "\n";
        } else if (!sweeps[i].estimate_error.empty()) {
            out << "# sweep " << i << " threshold unavailable: " << sweeps[i].estimate_error << "\n";
        }
    }
    const auto& cols = threshold_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
        const auto& cfg = sweeps[i].result.config;
        for (const auto& curve : sweeps[i].result.curves) {
            for (const auto& p : curve.points) {
                out << i << "," << cfg.assumed.to_string() << "," << ratio_text(cfg.ratio) << "," << p.n << ","
                    << num(p.rate) << "," << num(p.actual.x) << "," << num(p.actual.z) << "," << num(p.assumed.x)
                    << "," << num(p.assumed.z) << "," << p.trials << "," << p.failures << "," << p.failures_l1 << ","
                    << p.failures_l2 << "," << num(p.failure_probability()) << "," << num(p.standard_error())
                    << "\n";
            }
        }
    }
}

namespace {

constexpr double kPlotMax = 0.30;
constexpr double kSize = 560.0;
constexpr double kMargin = 60.0;

double sx(double x) { return kMargin + x / kPlotMax * kSize; }
double sy(double z) { return kMargin + kSize - z / kPlotMax * kSize; }

// Matched critical curve of `eq` traced over the angle of the ratio slice.
std::vector<XZRates> analytic_curve(CriticalEquation eq) {
    std::vector<CurveSlice> slices;
    const int steps = 60;
    for (int i = 0; i <= steps; ++i) {
        double theta = 0.01 + (std::numbers::pi / 2 - 0.02) * i / steps;
        CurveSlice s;
        s.slice_param = theta;
        s.direction_x = std::cos(theta) / (std::cos(theta) + std::sin(theta));
        s.direction_z = 1.0 - s.direction_x;
        slices.push_back(s);
    }
    std::vector<XZRates> pts;
    for (const auto& cp : solve_critical_curve(eq, slices)) {
        if (cp.found) pts.push_back(cp.actual);
    }
    return pts;
}

void polyline(std::ostream& out, const std::vector<XZRates>& pts, const char* color, const char* dash) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (const auto& p : pts) out << num(sx(p.x)) << "," << num(sy(p.z)) << " ";
    out << "\"/>\n";
}

}  // namespace

void write_figure_svg(std::ostream& out, const std::vector<SweepSummary>& sweeps) {
    const double w = kSize + 2 * kMargin;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 180 << "\" height=\"" << w
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 6; ++i) {
        double v = kPlotMax * i / 6;
        out << "<text x=\"" << num(sx(v)) << "\" y=\"" << kMargin + kSize + 18 << "\" text-anchor=\"middle\">"
            << num(v) << "</text>\n";
        out << "<text x=\"" << kMargin - 8 << "\" y=\"" << num(sy(v) + 4) << "\" text-anchor=\"end\">" << num(v)
            << "</text>\n";
    }
    out << "<text x=\"" << kMargin + kSize / 2 << "\" y=\"" << w - 14
        << "\" text-anchor=\"middle\">actual X rate</text>\n";
    out << "<text x=\"16\" y=\"" << kMargin + kSize / 2 << "\" transform=\"rotate(-90 16 " << kMargin + kSize / 2
        << ")\" text-anchor=\"middle\">actual Z rate</text>\n";

    const double pc = kMulticriticalRate;
    out << "<polyline fill=\"none\" stroke=\"gray\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\" points=\""
        << num(sx(0)) << "," << num(sy(pc)) << " " << num(sx(pc)) << "," << num(sy(pc)) << " " << num(sx(pc)) << ","
        << num(sy(0)) << "\"/>\n";
    polyline(out, {{0.0, 2 * pc}, {2 * pc, 0.0}}, "green", "2,3");
    polyline(out, analytic_curve(CriticalEquation::ZeroOrder), "blue", nullptr);
    polyline(out, analytic_curve(CriticalEquation::FirstOrder), "red", "8,3");

    const char* colors[] = {"black", "purple", "orange", "teal", "brown"};
    std::size_t k = 0;
    for (const auto& s : sweeps) {
        if (!s.estimate) continue;
        const char* c = colors[k++ % 5];
        double r = s.result.config.ratio;
        double fx = std::isinf(r) ? 1.0 : r / (1 + r);
        double fz = 1.0 - fx;
        double v = s.estimate->value;
        double u = s.estimate->uncertainty;
        out << "<line x1=\"" << num(sx((v - u) * fx)) << "\" y1=\"" << num(sy((v - u) * fz)) << "\" x2=\""
            << num(sx((v + u) * fx)) << "\" y2=\"" << num(sy((v + u) * fz)) << "\" stroke=\"" << c << "\"/>\n";
        out << "<circle cx=\"" << num(sx(v * fx)) << "\" cy=\"" << num(sy(v * fz)) << "\" r=\"4\" fill=\"" << c
            << "\"><title>" << s.result.config.assumed.to_string() << " ratio=" << ratio_text(r)
            << " threshold=" << num(v) << "</title></circle>\n";
    }

    double lx = w + 4;
    auto legend = [&](double y, const char* color, const char* dash, const std::string& label) {
        out << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 24 << "\" y2=\"" << y
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
        if (dash) out << " stroke-dasharray=\"" << dash << "\"";
        out << "/>\n<text x=\"" << lx + 30 << "\" y=\"" << y + 4 << "\">" << label << "</text>\n";
    };
    legend(kMargin + 10, "blue", nullptr, "zero order");
    legend(kMargin + 30, "red", "8,3", "first order");
    legend(kMargin + 50, "green", "2,3", "sum = 2 pc");
    legend(kMargin + 70, "gray", "6,4", "max = pc");
    out << "<circle cx=\"" << lx + 12 << "\" cy=\"" << kMargin + 90 << "\" r=\"4\"/>\n<text x=\"" << lx + 30
        << "\" y=\"" << kMargin + 94 << "\">MWPM</text>\n";
    out << "</svg>\n";
}

void write_summary_json(std::ostream& out, const std::vector<SweepSummary>& sweeps) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["format"] = "toric-summary-v1";
    doc["sweeps"] = ordered_json::array();
    for (const auto& s : sweeps) {
        const auto& cfg = s.result.config;
        ordered_json j;
        ordered_json echo = ordered_json::object();
        for (const auto& [k, v] : cfg.echo()) echo[k] = v;
        j["config"] = echo;
        j["master_seed"] = cfg.seed;
        j["trial_index"] = "(point << 32) + trial";
        if (s.estimate) {
            j["threshold"] = {{"value", s.estimate->value},
                              {"uncertainty", s.estimate->uncertainty},
                              {"pair_crossings", s.estimate->pair_crossings}};
        } else {
            j["threshold"] = nullptr;
            j["threshold_error"] = s.estimate_error;
        }
        ordered_json curves = ordered_json::array();
        for (const auto& c : s.result.curves) {
            ordered_json pts = ordered_json::array();
            for (const auto& p : c.points) {
                pts.push_back({{"rate", p.rate},
                               {"actual", {p.actual.x, p.actual.z}},
                               {"assumed", {p.assumed.x, p.assumed.z}},
                               {"trials", p.trials},
                               {"failures", p.failures},
                               {"failures_l1", p.failures_l1},
                               {"failures_l2", p.failures_l2}});
            }
            curves.push_back({{"n", c.n}, {"points", pts}});
        }
        j["curves"] = curves;
        doc["sweeps"].push_back(j);
    }
    out << doc.dump(2) << "\n";
}

namespace {

std::ofstream open_or_throw(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    return f;
}

void close_or_throw(std::ofstream& f, const std::filesystem::path& path) {
    f.close();
    if (!f) throw std::runtime_error("error writing '" + path.string() + "'");
}

}  // namespace

ReportFiles emit_report(const std::vector<SweepSummary>& sweeps, const std::string& directory) {
    namespace fs = std::filesystem;
    fs::path dir(directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

    ReportFiles files;
    bool empty = true;
    for (const auto& s : sweeps) {
        for (const auto& c : s.result.curves) empty = empty && c.points.empty();
    }

    files.csv = (dir / "threshold.csv").string();
    auto csv = open_or_throw(files.csv);
    write_threshold_csv(csv, sweeps);
    close_or_throw(csv, files.csv);

    files.json = (dir / "summary.json").string();
    auto js = open_or_throw(files.json);
    write_summary_json(js, sweeps);
    close_or_throw(js, files.json);

    if (empty) {
        files.warnings.push_back("no results: wrote header-only CSV and skipped the SVG");
        return files;
    }
    files.svg = (dir / "figure2.svg").string();
    auto svg = open_or_throw(files.svg);
    write_figure_svg(svg, sweeps);
    close_or_throw(svg, files.svg);
    for (const auto& s : sweeps) {
        if (!s.estimate) files.warnings.push_back("no threshold for one sweep: " + s.estimate_error);
    }
    return files;
}

}  // namespace toric
