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

#include "toric/roots.h"

#include <cmath>

namespace toric {

namespace {

int sign(double v) { return (v > 0) - (v < 0); }

constexpr int kScanPoints = 32;
constexpr int kMaxIterations = 200;

}  // namespace

RootResult bisect(const std::function<double(double)>& f, double lo, double hi, double tolerance) {
    RootResult r;
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0 || fhi == 0.0) {
        r.found = true;
        r.root = flo == 0.0 ? lo : hi;
        r.residual = 0.0;
        return r;
    }
    if (sign(flo) == sign(fhi)) {
        r.reason = "no sign change in bracket";
        return r;
    }

    int changes = 0;
    int prev = sign(flo);
    for (int i = 1; i <= kScanPoints; ++i) {
        double x = lo + (hi - lo) * i / kScanPoints;
        int s = i == kScanPoints ? sign(fhi) : sign(f(x));
        if (s != 0 && s != prev) {
            ++changes;
            prev = s;
        }
    }
    if (changes != 1) {
        r.reason = "bracket is not monotone (" + std::to_string(changes) + " sign changes)";
        return r;
    }

    double a = lo;
    double b = hi;
    double fa = flo;
    double mid = 0.5 * (a + b);
    double fm = f(mid);
    for (r.iterations = 0; r.iterations < kMaxIterations; ++r.iterations) {
        mid = 0.5 * (a + b);
        fm = f(mid);
        if (fm == 0.0 || (std::fabs(fm) <= tolerance && b - a <= 1e-13)) break;
        if (mid <= a || mid >= b) break;
        if (sign(fm) == sign(fa)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    r.root = mid;
    r.residual = fm;
    r.found = std::fabs(fm) <= tolerance;
    if (!r.found) r.reason = "bisection stalled above tolerance";
    return r;
}

}  // namespace toric
