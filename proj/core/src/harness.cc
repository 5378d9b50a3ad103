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

#include "toric/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "toric/decoder.h"
#include "toric/error.h"
#include "toric/lattice.h"

namespace toric {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw StructuralError("bad number for '" + key + "': '" + v + "'");
    }
}

long long to_integer(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long d = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw StructuralError("bad integer for '" + key + "': '" + v + "'");
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

constexpr int kTrialBlock = 32;

}  // namespace

AssumedPolicy AssumedPolicy::parse(const std::string& raw) {
    std::string text = trim(raw);
    AssumedPolicy p;
    if (text == "matched") {
        p.kind = AssumedPolicyKind::Matched;
    } else if (text == "symmetric" || text == "symmetric_average") {
        p.kind = AssumedPolicyKind::SymmetricAverage;
    } else if (text == "symmetric_homogeneous") {
        p.kind = AssumedPolicyKind::SymmetricHomogeneous;
    } else {
        auto parts = split(text, ',');
        if (parts.size() != 2) {
            throw StructuralError("assumed policy must be matched, symmetric, symmetric_homogeneous or px,pz: '" +
                                  text + "'");
        }
        p.kind = AssumedPolicyKind::Fixed;
        p.fixed = {to_double("assumed", parts[0]), to_double("assumed", parts[1])};
        IndependentXZModel check(p.fixed.x, p.fixed.z);
        (void)check;
    }
    return p;
}

std::string AssumedPolicy::to_string() const {
    switch (kind) {
        case AssumedPolicyKind::Matched:
            return "matched";
        case AssumedPolicyKind::SymmetricAverage:
            return "symmetric_average";
        case AssumedPolicyKind::SymmetricHomogeneous:
            return "symmetric_homogeneous";
        case AssumedPolicyKind::Fixed:
            return format_double(fixed.x) + "," + format_double(fixed.z);
    }
    return "?";
}

IndependentXZModel AssumedPolicy::resolve(const XZRates& actual) const {
    switch (kind) {
        case AssumedPolicyKind::Matched:
            return {actual.x, actual.z};
        case AssumedPolicyKind::SymmetricAverage: {
            double m = 0.5 * (actual.x + actual.z);
            return {m, m};
        }
        case AssumedPolicyKind::SymmetricHomogeneous: {
            double p = homogeneous_reduction(actual).p;
            return {p, p};
        }
        case AssumedPolicyKind::Fixed:
            return {fixed.x, fixed.z};
    }
    return {actual.x, actual.z};
}

std::vector<RatePoint> ratio_points(double ratio, const std::vector<double>& totals) {
    if (!(ratio >= 0.0)) throw DomainError("ratio must be nonnegative");
    double fx = std::isinf(ratio) ? 1.0 : ratio / (1.0 + ratio);
    double fz = std::isinf(ratio) ? 0.0 : 1.0 / (1.0 + ratio);
    std::vector<RatePoint> out;
    out.reserve(totals.size());
    for (double s : totals) out.push_back({s, {s * fx, s * fz}});
    return out;
}

std::vector<double> parse_grid(const std::string& raw) {
    std::string text = trim(raw);
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) throw StructuralError("grid range must be start:stop:step: '" + text + "'");
        double a = to_double("grid", parts[0]);
        double b = to_double("grid", parts[1]);
        double step = to_double("grid", parts[2]);
        if (!(step > 0.0) || b < a) throw StructuralError("grid range needs step > 0 and stop >= start");
        auto count = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
        for (long long i = 0; i < count; ++i) {
            // Round away the accumulated binary noise so values echo cleanly.
            out.push_back(std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
    } else {
        for (const auto& p : split(text, ',')) {
            if (!p.empty()) out.push_back(to_double("grid", p));
        }
    }
    if (out.empty()) throw StructuralError("grid is empty");
    return out;
}

void ExperimentConfig::validate() const {
    if (sizes.empty()) throw StructuralError("no lattice sizes");
    for (int n : sizes) {
        if (n < 2) throw StructuralError("lattice size must be >= 2, got " + std::to_string(n));
    }
    if (points.empty()) throw StructuralError("rate grid is empty");
    for (const auto& p : points) {
        IndependentXZModel check(p.actual.x, p.actual.z);
        assumed.resolve(p.actual);
        (void)check;
    }
    if (trials < 1) throw StructuralError("trials must be >= 1");
    if (workers < 1) throw StructuralError("workers must be >= 1");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
    std::string size_list;
    for (std::size_t i = 0; i < sizes.size(); ++i) size_list += (i ? "," : "") + std::to_string(sizes[i]);
    std::string grid;
    for (std::size_t i = 0; i < points.size(); ++i) grid += (i ? "," : "") + format_double(points[i].rate);
    return {{"sizes", size_list},
            {"ratio", format_double(ratio)},
            {"grid", grid},
            {"assumed", assumed.to_string()},
            {"trials", std::to_string(trials)},
            {"seed", std::to_string(seed)},
            {"failure", "any nontrivial class on either lattice"}};
}

ConfigBuilder::ConfigBuilder() = default;

void ConfigBuilder::set(const std::string& raw_key, const std::string& value) {
    static const char* const kKeys[] = {"sizes", "ratio",  "grid", "px",      "pz",
                                        "assumed", "trials", "seed", "workers", "out"};
    std::string key = trim(raw_key);
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
        throw StructuralError("unknown config key '" + key + "'");
    }
    values_[key] = trim(value);
}

void ConfigBuilder::read(std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw StructuralError("config line " + std::to_string(line_no) + " is not key=value");
        }
        set(line.substr(0, eq), line.substr(eq + 1));
    }
}

void ConfigBuilder::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    read(in);
}

ExperimentConfig ConfigBuilder::build() const {
    ExperimentConfig c;
    auto get = [&](const char* k) -> const std::string* {
        auto it = values_.find(k);
        return it == values_.end() ? nullptr : &it->second;
    };
    if (auto v = get("sizes")) {
        c.sizes.clear();
        for (const auto& s : split(*v, ',')) c.sizes.push_back(static_cast<int>(to_integer("sizes", s)));
    }
    if (auto v = get("ratio")) c.ratio = (*v == "inf") ? std::numeric_limits<double>::infinity() : to_double("ratio", *v);
    if (auto v = get("assumed")) c.assumed = AssumedPolicy::parse(*v);
    if (auto v = get("trials")) c.trials = static_cast<int>(to_integer("trials", *v));
    if (auto v = get("seed")) c.seed = static_cast<std::uint64_t>(to_integer("seed", *v));
    if (auto v = get("workers")) c.workers = static_cast<int>(to_integer("workers", *v));
    if (auto v = get("out")) c.out = *v;

    bool single = get("px") || get("pz");
    if (single) {
        if (get("grid") || get("ratio")) throw StructuralError("px/pz select a single point; drop grid and ratio");
        double px = get("px") ? to_double("px", *get("px")) : 0.0;
        double pz = get("pz") ? to_double("pz", *get("pz")) : 0.0;
        c.points = {{px + pz, {px, pz}}};
        c.ratio = pz > 0.0 ? px / pz : std::numeric_limits<double>::infinity();
    } else {
        c.points = ratio_points(c.ratio, parse_grid(get("grid") ? *get("grid") : "0.18:0.244:0.008"));
    }
    c.validate();
    return c;
}

double CurvePoint::standard_error() const {
    if (trials <= 0) return 0.0;
    double f = failure_probability();
    return std::sqrt(f * (1.0 - f) / trials);
}

SweepResult run_sweep(const ExperimentConfig& config, std::ostream* log) {
    config.validate();
    SweepResult result;
    result.config = config;
    const int workers = std::max(1, config.workers);
    std::vector<std::uint8_t> outcome(static_cast<std::size_t>(config.trials));

    for (int n : config.sizes) {
        LatticeGeometry geometry(n);
        ThresholdCurve curve;
        curve.n = n;
        for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
            const auto& point = config.points[pi];
            IndependentXZModel actual(point.actual.x, point.actual.z);
            IndependentXZModel assumed = config.assumed.resolve(point.actual);

            std::atomic<int> next{0};
            auto work = [&] {
                Decoder decoder(geometry, assumed);
                PauliErrorPattern errors;
                for (;;) {
                    int start = next.fetch_add(kTrialBlock);
                    if (start >= config.trials) break;
                    int stop = std::min(config.trials, start + kTrialBlock);
                    for (int t = start; t < stop; ++t) {
                        sample_xz_into(errors, actual, geometry, {config.seed, trial_index(pi, t)});
                        auto o = decoder.decode_and_classify(errors);
                        outcome[t] = static_cast<std::uint8_t>((o.l1.trivial() ? 0 : 1) | (o.l2.trivial() ? 0 : 2));
                    }
                }
            };
            if (workers == 1) {
                work();
            } else {
                std::vector<std::jthread> pool;
                for (int w = 0; w < workers; ++w) pool.emplace_back(work);
            }

            CurvePoint cp;
            cp.rate = point.rate;
            cp.actual = point.actual;
            cp.assumed = {assumed.p_x(), assumed.p_z()};
            cp.n = n;
            cp.trials = config.trials;
            for (auto o : outcome) {
                cp.failures += o != 0;
                cp.failures_l1 += (o & 1) != 0;
                cp.failures_l2 += (o & 2) != 0;
            }
            if (log) {
                *log << "n=" << n << " rate=" << format_double(point.rate) << " px=" << format_double(point.actual.x)
                     << " pz=" << format_double(point.actual.z) << " failures=" << cp.failures << "/" << cp.trials
                     << std::endl;
            }
            curve.points.push_back(cp);
        }
        result.curves.push_back(std::move(curve));
    }
    return result;
}

ThresholdCurve synthetic_curve(int n, const std::vector<double>& rates, const std::vector<double>& failure,
                               int trials) {
    if (rates.size() != failure.size()) throw StructuralError("rates and failure probabilities differ in length");
    ThresholdCurve c;
    c.n = n;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        CurvePoint p;
        p.rate = rates[i];
        p.n = n;
        p.trials = trials;
        p.failures = static_cast<int>(std::lround(failure[i] * trials));
        c.points.push_back(p);
    }
    return c;
}

namespace {

struct Sample {
    double f;
    double se;
};

// Linear interpolation of the curve at rate r, which must lie in its range.
Sample interpolate(const ThresholdCurve& c, double r) {
    const auto& pts = c.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (r <= pts[i + 1].rate) {
            double span = pts[i + 1].rate - pts[i].rate;
            double t = span > 0.0 ? (r - pts[i].rate) / span : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            double f = (1 - t) * pts[i].failure_probability() + t * pts[i + 1].failure_probability();
            double se = std::hypot((1 - t) * pts[i].standard_error(), t * pts[i + 1].standard_error());
            return {f, se};
        }
    }
    return {pts.back().failure_probability(), pts.back().standard_error()};
}

struct Crossing {
    double rate;
    double sigma;
};

// Crossings of two curves; when they coincide everywhere, their 50% point.
std::vector<Crossing> pair_crossings(const ThresholdCurve& small, const ThresholdCurve& large) {
    double lo = std::max(small.points.front().rate, large.points.front().rate);
    double hi = std::min(small.points.back().rate, large.points.back().rate);
    std::vector<double> grid;
    for (const auto* c : {&small, &large}) {
        for (const auto& p : c->points) {
            if (p.rate >= lo && p.rate <= hi) grid.push_back(p.rate);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> d(grid.size());
    std::vector<double> sd(grid.size());
    std::vector<double> mean(grid.size());
    bool identical = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto a = interpolate(small, grid[i]);
        auto b = interpolate(large, grid[i]);
        d[i] = b.f - a.f;
        sd[i] = std::hypot(a.se, b.se);
        mean[i] = 0.5 * (a.f + b.f);
        if (d[i] != 0.0) identical = false;
    }
    std::vector<Crossing> out;
    if (identical) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            if ((mean[i] - 0.5) * (mean[i + 1] - 0.5) <= 0.0 && mean[i] != mean[i + 1]) {
                double t = (0.5 - mean[i]) / (mean[i + 1] - mean[i]);
                out.push_back({grid[i] + t * (grid[i + 1] - grid[i]), 0.0});
                break;
            }
        }
        return out;
    }
    // The larger lattice fails less below threshold and more above it.
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (d[i] < 0.0 && d[i + 1] >= 0.0) {
            double delta = grid[i + 1] - grid[i];
            double den = d[i] - d[i + 1];
            double rate = grid[i] + delta * d[i] / den;
            double g0 = delta * -d[i + 1] / (den * den);
            double g1 = delta * d[i] / (den * den);
            out.push_back({rate, std::hypot(g0 * sd[i], g1 * sd[i + 1])});
        }
    }
    return out;
}

}  // namespace

ThresholdEstimate estimate_threshold(std::vector<ThresholdCurve> curves) {
    if (curves.size() < 2) throw PreconditionError("threshold estimate needs curves at two or more sizes");
    std::sort(curves.begin(), curves.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    for (auto& c : curves) {
        if (c.points.size() < 2) throw InsufficientDataError("curve for n=" + std::to_string(c.n) + " has < 2 points");
        std::sort(c.points.begin(), c.points.end(), [](const auto& a, const auto& b) { return a.rate < b.rate; });
        double lo = 1.0;
        double hi = 0.0;
        for (const auto& p : c.points) {
            lo = std::min(lo, p.failure_probability());
            hi = std::max(hi, p.failure_probability());
        }
        if (!(lo < 0.2 && hi > 0.4)) {
            throw InsufficientDataError("curve for n=" + std::to_string(c.n) +
                                        " does not span the transition (min failure " + format_double(lo) +
                                        ", max " + format_double(hi) + ")");
        }
    }
    ThresholdEstimate est;
    double var = 0.0;
    for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
        auto xs = pair_crossings(curves[i], curves[i + 1]);
        if (xs.empty()) {
            throw InsufficientDataError("curves for n=" + std::to_string(curves[i].n) + " and n=" +
                                        std::to_string(curves[i + 1].n) + " do not cross inside the grid");
        }
        double r = 0.0;
        double v = 0.0;
        for (const auto& x : xs) {
            r += x.rate;
            v += x.sigma * x.sigma;
        }
        r /= static_cast<double>(xs.size());
        v /= static_cast<double>(xs.size() * xs.size());
        est.pair_crossings.push_back(r);
        var += v;
    }
    const auto k = static_cast<double>(est.pair_crossings.size());
    auto [mn, mx] = std::minmax_element(est.pair_crossings.begin(), est.pair_crossings.end());
    double sum = 0.0;
    for (double r : est.pair_crossings) sum += r;
    est.value = sum / k;
    est.uncertainty = 0.5 * (*mx - *mn) + std::sqrt(var) / k;
    return est;
}

}  // namespace toric
