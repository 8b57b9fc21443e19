// Copyright 2026 The gausschan Authors
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

#include <random>
#include <vector>

#include "gausschan/capacity.hpp"
#include "gausschan/decompose.hpp"
#include "gausschan/network.hpp"

namespace {

using namespace gausschan;

std::vector<GaussianChannel> sample_channels(int count) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> unit(-3.0, 3.0);
    std::vector<GaussianChannel> out;
    while (static_cast<int>(out.size()) < count) {
        Mat2 x{unit(rng), unit(rng), unit(rng), unit(rng)};
        SymMat2 y{unit(rng), unit(rng), unit(rng)};
        if (y.a11 < 0.0 || y.a22 < 0.0 || y.det() <= 1e-6) continue;
        if (std::sqrt(y.det()) < std::fabs(x.det() - 1.0) / 2.0) continue;
        if (rank_of(x) < 2) continue;
        out.push_back(new_channel(x, y));
    }
    return out;
}

void bm_decompose_fiducial(benchmark::State& state) {
    const auto channels = sample_channels(256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose_fiducial(channels[i++ % channels.size()]));
    }
}
BENCHMARK(bm_decompose_fiducial);

void bm_svd2(benchmark::State& state) {
    const auto channels = sample_channels(256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(svd2(channels[i++ % channels.size()].X));
    }
}
BENCHMARK(bm_svd2);

void bm_capacity_closed_form(benchmark::State& state) {
    const FiducialParams f{0.7, 0.4, 0.3};
    const EnergyBudget e{n_threshold(f) + 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_capacity_closed_form(f, e));
    }
}
BENCHMARK(bm_capacity_closed_form);

void bm_one_shot_optimizer(benchmark::State& state) {
    const GaussianChannel c = to_channel({1.0, 0.5, 0.3});
    OneShotOptions opts;
    opts.starts = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(numerical_one_shot(c, {1.0}, opts));
    }
}
BENCHMARK(bm_one_shot_optimizer)->Arg(4)->Arg(32);

void bm_extract_channel(benchmark::State& state) {
    const OpticalNetwork net = build_fiducial({0.7, 0.3, 0.4});
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_channel(net));
    }
}
BENCHMARK(bm_extract_channel);

}  // namespace

BENCHMARK_MAIN();
