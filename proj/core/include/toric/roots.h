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

#include <functional>
#include <string>

namespace toric {

inline constexpr double kRootTolerance = 1e-10;

struct RootResult {
    bool found = false;
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    /// Why no root was returned, when found is false.
    std::string reason;
};

/// Bisection on [lo, hi]. Requires a sign change between the endpoints (an
/// endpoint that is exactly zero counts as the root). A coarse scan of the
/// interior must show a single sign change, otherwise the bracket is rejected
/// as non-monotone. Never throws for a missing root; exceptions raised by f
/// propagate.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double tolerance = kRootTolerance);

}  // namespace toric
