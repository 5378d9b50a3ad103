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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toric/decoder.h"
#include "toric/error.h"
#include "toric/harness.h"
#include "toric/lattice.h"
#include "toric/matching.h"
#include "toric/noise.h"
#include "toric/rbim_analytic.h"
#include "toric/rbim_exact.h"
#include "toric/report.h"

namespace {

using namespace toric;

constexpr const char* kThresholdColumns =
    "threshold.csv columns:\n"
    "  sweep, assumed, ratio, n, rate (= actual px + pz), actual_px, actual_pz,\n"
    "  assumed_px, assumed_pz, trials, failures, failures_l1, failures_l2,\n"
    "  failure_probability, stderr\n"
    "See FORMATS.md for details.";

constexpr const char* kAnalyticColumns =
    "analytic CSV columns:\n"
    "  slice_param, actual_px, actual_pz, assumed_px, assumed_pz, equation, root, residual, note";

// Raw sweep flags; empty strings are unset.
struct SweepFlags {
    std::string config;
    std::string sizes;
    std::string trials;
    std::string px;
    std::string pz;
    std::string assumed;
    std::string ratio;
    std::string grid;
    std::string seed;
    std::string workers;
    std::string out = "out";
    bool quiet = false;
};

void add_sweep_flags(CLI::App* app, SweepFlags& f) {
    app->add_option("--config", f.config, "flat key=value config file; flags override it");
    app->add_option("--n", f.sizes, "lattice sizes, comma separated (default 16,24,32)");
    app->add_option("--trials", f.trials, "trials per point (default 2000)");
    app->add_option("--px", f.px, "single actual X rate");
    app->add_option("--pz", f.pz, "single actual Z rate");
    app->add_option("--assumed", f.assumed, "matched | symmetric | symmetric_homogeneous | px,pz");
    app->add_option("--ratio", f.ratio, "actual px/pz along the sweep (inf allowed)");
    app->add_option("--grid", f.grid, "total rates px+pz: start:stop:step or a,b,c");
    app->add_option("--seed", f.seed, "master seed");
    app->add_option("--workers", f.workers, "worker threads; no effect on results");
    app->add_option("--out", f.out, "output directory")->capture_default_str();
    app->add_flag("--quiet", f.quiet, "no per-point log");
}

ExperimentConfig build_config(const SweepFlags& f) {
    ConfigBuilder b;
    if (!f.config.empty()) b.read_file(f.config);
    auto set = [&](const char* k, const std::string& v) {
        if (!v.empty()) b.set(k, v);
    };
    set("sizes", f.sizes);
    set("trials", f.trials);
    set("px", f.px);
    set("pz", f.pz);
    set("assumed", f.assumed);
    set("ratio", f.ratio);
    set("grid", f.grid);
    set("seed", f.seed);
    set("workers", f.workers);
    return b.build();
}

void print_summary(const SweepSummary& s) {
    const auto& cfg = s.result.config;
    std::cout << "assumed=" << cfg.assumed.to_string() << " ratio=" << cfg.ratio << ": ";
    if (s.estimate) {
        std::cout << "threshold (total rate) " << std::setprecision(5) << s.estimate->value << " +- "
                  << s.estimate->uncertainty << "\n";
    } else {
        std::cout << "no threshold (" << s.estimate_error << ")\n";
    }
}

void write_outputs(const std::vector<SweepSummary>& sweeps, const std::string& out) {
    auto files = emit_report(sweeps, out);
    for (const auto& w : files.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "wrote " << files.csv << "\n";
    if (!files.svg.empty()) std::cout << "wrote " << files.svg << "\n";
    std::cout << "wrote " << files.json << "\n";
}

int run_threshold(const SweepFlags& f) {
    auto config = build_config(f);
    auto summary = summarize(run_sweep(config, f.quiet ? nullptr : &std::cerr));
    print_summary(summary);
    write_outputs({summary}, f.out);
    return 0;
}

struct AnalyticFlags {
    std::string equation = "all";
    std::string ratios = "0.125,0.25,0.5,1,2,4,8";
    std::string assumed = "matched";
    std::string out;
};

int run_analytic(const AnalyticFlags& f) {
    std::vector<CriticalEquation> eqs;
    if (f.equation == "zero" || f.equation == "all") eqs.push_back(CriticalEquation::ZeroOrder);
    if (f.equation == "first" || f.equation == "all") eqs.push_back(CriticalEquation::FirstOrder);
    if (f.equation == "generalized" || f.equation == "all") eqs.push_back(CriticalEquation::Generalized);
    if (eqs.empty()) throw StructuralError("equation must be zero, first, generalized or all");

    AnalyticAssumption assumption = AnalyticAssumption::Matched;
    XZRates fixed;
    if (f.assumed == "symmetric" || f.assumed == "symmetric_average") {
        assumption = AnalyticAssumption::SymmetricAverage;
    } else if (f.assumed == "symmetric_homogeneous") {
        assumption = AnalyticAssumption::SymmetricHomogeneous;
    } else if (f.assumed != "matched") {
        auto p = AssumedPolicy::parse(f.assumed);
        assumption = AnalyticAssumption::Fixed;
        fixed = p.fixed;
    }

    std::vector<CurveSlice> slices;
    for (double r : parse_grid(f.ratios)) {
        auto s = ratio_slice(r, assumption);
        s.fixed_assumed = fixed;
        slices.push_back(s);
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!f.out.empty()) {
        file.open(f.out);
        if (!file) throw std::runtime_error("cannot write '" + f.out + "'");
        out = &file;
    }
    *out << "# toric analytic curve assumed=" << f.assumed << "\n";
    *out << "slice_param,actual_px,actual_pz,assumed_px,assumed_pz,equation,root,residual,note\n";
    *out << std::setprecision(10);
    // The generalized equation is solved once, along the depolarizing line.
    const std::vector<CurveSlice> depolarizing{CurveSlice{}};
    for (auto eq : eqs) {
        const auto& use = eq == CriticalEquation::Generalized ? depolarizing : slices;
        for (const auto& cp : solve_critical_curve(eq, use)) {
            *out << cp.slice_param << "," << cp.actual.x << "," << cp.actual.z << "," << cp.assumed.x << ","
                 << cp.assumed.z << "," << to_string(eq) << ",";
            if (cp.found) {
                *out << cp.root << "," << cp.residual << ",";
            } else {
                *out << ",,";
            }
            if (eq == CriticalEquation::Generalized) {
                *out << "q=" << cp.q[0] << ";" << cp.q[1] << ";" << cp.q[2];
                if (!cp.note.empty()) *out << " ";
            }
            *out << cp.note << "\n";
        }
    }
    std::cerr << std::setprecision(8) << "depolarizing optimal 3q = " << depolarizing_optimal_threshold()
              << ", MWPM estimate 3q = " << mwpm_depolarizing_estimate() << "\n";
    return 0;
}

struct MatchFlags {
    std::string graph;
    int n = 0;
    double px = 0.1;
    double pz = 0.1;
    std::uint64_t seed = 1;
    std::uint64_t trial = 0;
};

// Graph file: "nodes N" then one "u v weight" line per edge.
MatchingGraph read_graph(std::istream& in) {
    std::string word;
    int nodes = 0;
    if (!(in >> word >> nodes) || word != "nodes") throw StructuralError("graph file must start with 'nodes N'");
    MatchingGraph g(nodes);
    int u = 0;
    int v = 0;
    double w = 0.0;
    while (in >> u >> v >> w) g.add_edge(u, v, w);
    return g;
}

int run_match(const MatchFlags& f) {
    if (!f.graph.empty()) {
        std::ifstream in(f.graph);
        if (!in) throw std::runtime_error("cannot read '" + f.graph + "'");
        auto g = read_graph(in);
        auto m = min_weight_perfect_matching(g);
        for (auto [u, v] : m.pairs) std::cout << "pair " << u << " " << v << "\n";
        std::cout << "total " << m.total_weight << "\n";
        if (g.node_count() <= kBruteForceMaxNodes) {
            auto b = brute_force_matching(g);
            std::cout << "brute force total " << b.total_weight << (b.pairs == m.pairs ? " (same pairs)" : "")
                      << "\n";
        }
        return 0;
    }
    if (f.n < 2) throw StructuralError("give --graph FILE or --n N");
    LatticeGeometry geometry(f.n);
    IndependentXZModel model(f.px, f.pz);
    auto errors = sample_xz(model, geometry, {f.seed, f.trial});
    auto [l1, l2] = map_errors_to_bonds(geometry, errors);
    Decoder decoder(geometry, model);
    for (auto* cfg : {&l1, &l2}) {
        auto syndrome = extract_syndrome(geometry, *cfg);
        auto correction = decoder.decode(syndrome);
        std::cout << to_string(cfg->lattice_id()) << ": " << cfg->count_flipped() << " flipped bonds, "
                  << syndrome.size() << " anyons";
        for (const auto& a : syndrome.anyons) std::cout << " (" << a.row << "," << a.col << ")";
        correction.apply_to(*cfg);
        std::cout << "\n  correction " << correction.size() << " bonds, class "
                  << homology_class(geometry, *cfg).label() << "\n";
    }
    return 0;
}

struct OracleFlags {
    int n = 3;
    double jh = std::numeric_limits<double>::quiet_NaN();
    double jv = std::numeric_limits<double>::quiet_NaN();
    int samples = 20;
    double px = 0.15;
    double pz = 0.15;
    std::string assumed = "matched";
    int trials = 2000;
    std::uint64_t seed = 1;
    std::string out;
};

std::ostream& oracle_stream(const OracleFlags& f, std::ofstream& file) {
    if (f.out.empty()) return std::cout;
    file.open(f.out);
    if (!file) throw std::runtime_error("cannot write '" + f.out + "'");
    return file;
}

int run_duality(const OracleFlags& f) {
    std::vector<CouplingsXZ> pairs;
    if (!std::isnan(f.jh)) {
        double jv = std::isnan(f.jv) ? std::atanh(std::exp(-2 * f.jh)) : f.jv;
        pairs.push_back({f.jh, jv});
    } else {
        for (int i = 0; i < f.samples; ++i) {
            double jh = 0.15 + 1.2 * i / std::max(1, f.samples - 1);
            pairs.push_back({jh, std::atanh(std::exp(-2 * jh))});
        }
    }
    std::ofstream file;
    auto& csv = oracle_stream(f, file);
    csv << "n,j_h,j_v,self_dual_residual,spin_sum,loop_sum,self_dual_sum,loop_relative_error,"
           "self_dual_relative_error\n"
        << std::setprecision(12);
    double worst = 0.0;
    for (const auto& c : pairs) {
        auto r = duality_identity_check(c, f.n);
        worst = std::max(worst, r.max_relative_error);
        csv << f.n << "," << c.j_h << "," << c.j_v << "," << self_dual_check_xz(c) << "," << r.spin_sum << ","
            << r.loop_sum << "," << r.self_dual_sum << "," << r.loop_relative_error << ","
            << r.self_dual_relative_error << "\n";
    }
    std::cerr << pairs.size() << " coupling pairs at n=" << f.n << ", max relative error " << worst << "\n";
    return 0;
}

int run_mle_vs_mwpm(const OracleFlags& f) {
    LatticeGeometry geometry(f.n);
    IndependentXZModel actual(f.px, f.pz);
    auto assumed = AssumedPolicy::parse(f.assumed).resolve({f.px, f.pz});
    Decoder decoder(geometry, assumed);
    int mle = 0;
    int mwpm = 0;
    for (int t = 0; t < f.trials; ++t) {
        auto errors = sample_xz(actual, geometry, {f.seed, static_cast<std::uint64_t>(t)});
        mle += !mle_decode_and_classify(errors, assumed, geometry).success;
        mwpm += !decoder.decode_and_classify(errors).success;
    }
    std::ofstream file;
    auto& csv = oracle_stream(f, file);
    csv << "# toric oracle mle-vs-mwpm seed=" << f.seed << "\n"
        << "n,actual_px,actual_pz,assumed_px,assumed_pz,trials,mle_failures,mwpm_failures\n"
        << f.n << "," << f.px << "," << f.pz << "," << assumed.p_x() << "," << assumed.p_z() << "," << f.trials
        << "," << mle << "," << mwpm << "\n";
    std::cerr << "MLE failures " << mle << "/" << f.trials << ", MWPM failures " << mwpm << "/" << f.trials
              << "\n";
    return 0;
}

struct FigureFlags {
    std::string sizes = "16,24,32";
    int trials = 500;
    std::string ratios = "1,2,4,8";
    std::string symmetric_ratios = "4";
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out = "figure2";
};

// Ten total rates bracketing the zero-order matched root along the ratio.
std::vector<double> figure_grid(double ratio) {
    auto root = solve_critical_curve(CriticalEquation::ZeroOrder, {ratio_slice(ratio)}).at(0);
    if (!root.found) throw std::runtime_error("no analytic root at ratio " + std::to_string(ratio));
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(std::round(root.root * (0.72 + 0.04 * i) * 1e4) / 1e4);
    return grid;
}

int run_figure2(const FigureFlags& f) {
    std::vector<SweepSummary> sweeps;
    auto sweep = [&](double ratio, const char* assumed) {
        ConfigBuilder b;
        b.set("sizes", f.sizes);
        b.set("trials", std::to_string(f.trials));
        b.set("ratio", std::isinf(ratio) ? "inf" : std::to_string(ratio));
        std::string grid;
        for (double g : figure_grid(ratio)) grid += (grid.empty() ? "" : ",") + std::to_string(g);
        b.set("grid", grid);
        b.set("assumed", assumed);
        b.set("seed", std::to_string(f.seed));
        b.set("workers", std::to_string(f.workers));
        auto s = summarize(run_sweep(b.build(), &std::cerr));
        print_summary(s);
        sweeps.push_back(std::move(s));
    };
    for (double r : parse_grid(f.ratios)) sweep(r, "matched");
    if (!f.symmetric_ratios.empty()) {
        for (double r : parse_grid(f.symmetric_ratios)) sweep(r, "symmetric_average");
    }
    write_outputs(sweeps, f.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric code decoding under noise-model mismatch"};
    app.require_subcommand(1);

    SweepFlags threshold_flags;
    auto* threshold = app.add_subcommand("threshold", "Monte Carlo threshold sweep");
    add_sweep_flags(threshold, threshold_flags);
    threshold->footer(kThresholdColumns);

    AnalyticFlags analytic_flags;
    auto* analytic = app.add_subcommand("analytic", "solve the analytic critical curves");
    analytic->add_option("--equation", analytic_flags.equation, "zero | first | generalized | all")
        ->capture_default_str();
    analytic->add_option("--ratio", analytic_flags.ratios, "actual px/pz slices: a,b,c or start:stop:step")
        ->capture_default_str();
    analytic->add_option("--assumed", analytic_flags.assumed, "matched | symmetric | symmetric_homogeneous | px,pz")
        ->capture_default_str();
    analytic->add_option("--out", analytic_flags.out, "CSV file (default stdout)");
    analytic->footer(kAnalyticColumns);

    MatchFlags match_flags;
    auto* match = app.add_subcommand("match", "matching debug: solve a graph file or decode one sample");
    match->add_option("--graph", match_flags.graph, "file with 'nodes N' then 'u v weight' lines");
    match->add_option("--n", match_flags.n, "lattice size for a sampled syndrome");
    match->add_option("--px", match_flags.px)->capture_default_str();
    match->add_option("--pz", match_flags.pz)->capture_default_str();
    match->add_option("--seed", match_flags.seed)->capture_default_str();
    match->add_option("--trial", match_flags.trial)->capture_default_str();

    OracleFlags oracle_flags;
    auto* oracle = app.add_subcommand("oracle", "exact small-lattice oracles");
    oracle->require_subcommand(1);
    auto* duality = oracle->add_subcommand("duality", "spin sum vs loop sums at self-dual couplings");
    duality->add_option("--n", oracle_flags.n, "2 or 3")->capture_default_str();
    duality->add_option("--jh", oracle_flags.jh, "horizontal coupling (default: sample the self-dual curve)");
    duality->add_option("--jv", oracle_flags.jv, "vertical coupling (default: self-dual partner of --jh)");
    duality->add_option("--samples", oracle_flags.samples, "self-dual pairs when --jh is absent")
        ->capture_default_str();
    duality->add_option("--out", oracle_flags.out, "CSV file (default stdout)");
    auto* mle = oracle->add_subcommand("mle-vs-mwpm", "exact MLE and MWPM on shared samples");
    mle->add_option("--n", oracle_flags.n, "lattice size, at most 3")->capture_default_str();
    mle->add_option("--px", oracle_flags.px)->capture_default_str();
    mle->add_option("--pz", oracle_flags.pz)->capture_default_str();
    mle->add_option("--assumed", oracle_flags.assumed)->capture_default_str();
    mle->add_option("--trials", oracle_flags.trials)->capture_default_str();
    mle->add_option("--seed", oracle_flags.seed)->capture_default_str();
    mle->add_option("--out", oracle_flags.out, "CSV file (default stdout)");

    FigureFlags figure_flags;
    auto* figure = app.add_subcommand("figure2", "canned sweeps over several ratios plus the analytic overlay");
    figure->add_option("--n", figure_flags.sizes)->capture_default_str();
    figure->add_option("--trials", figure_flags.trials)->capture_default_str();
    figure->add_option("--ratio", figure_flags.ratios, "matched-assumption ratios")->capture_default_str();
    figure->add_option("--symmetric-ratio", figure_flags.symmetric_ratios,
                       "ratios also decoded with the symmetric assumption (empty for none)")
        ->capture_default_str();
    figure->add_option("--seed", figure_flags.seed)->capture_default_str();
    figure->add_option("--workers", figure_flags.workers)->capture_default_str();
    figure->add_option("--out", figure_flags.out, "output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (threshold->parsed()) return run_threshold(threshold_flags);
        if (analytic->parsed()) return run_analytic(analytic_flags);
        if (match->parsed()) return run_match(match_flags);
        if (duality->parsed()) return run_duality(oracle_flags);
        if (mle->parsed()) return run_mle_vs_mwpm(oracle_flags);
        if (figure->parsed()) return run_figure2(figure_flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
