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

#include <benchmark/benchmark.h>

#include "toric/decoder.h"
#include "toric/lattice.h"
#include "toric/noise.h"

namespace {

// One sample and decode per iteration; range(0) is n, range(1) the rate in
// thousandths.
void BM_DecodeSample(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    double p = state.range(1) / 1000.0;
    toric::LatticeGeometry g(n);
    toric::IndependentXZModel model(p, p);
    toric::Decoder decoder(g, model);
    std::uint64_t t = 0;
    for (auto _ : state) {
        auto e = toric::sample_xz(model, g, {1, t++});
        benchmark::DoNotOptimize(decoder.decode_and_classify(e).success);
    }
}
BENCHMARK(BM_DecodeSample)->Args({16, 100})->Args({24, 100})->Args({32, 100})->Args({32, 50});

}  // namespace
