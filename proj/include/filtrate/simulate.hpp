// Copyright 2026 The Filtrate Authors
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

#include <array>
#include <cstdint>
#include <vector>

#include "filtrate/ensemble.hpp"
#include "filtrate/povm.hpp"

namespace filtrate {

struct SimulationReport {
  std::uint64_t trials;
  std::uint64_t seed;
  int chunks;
  // counts[i][k]: input state i, outcome k (alpha success, beta success,
  // failure). Entries sum to trials.
  std::vector<std::array<std::uint64_t, 3>> counts;
  double empirical_q;           // failure fraction over all trials
  double empirical_error_rate;  // conclusive-but-wrong fraction
  double expected_q;            // prior-weighted <psi_i|pi0|psi_i>
};

/// Monte Carlo run: each trial draws an input state by prior and an outcome
/// by the Born rule, both via inverse-CDF over uniforms from a per-chunk
/// mt19937_64 seeded with derive_seed(seed, chunk). Identical
/// (problem, povm, trials, seed, chunks) give identical counts on any
/// platform. Negative outcome probabilities within numerical noise are
/// clipped to zero; totals outside 1e-8 of 1 abort.
SimulationReport run_simulation(const FilteringProblem &problem,
                                const Povm &povm, std::uint64_t trials,
                                std::uint64_t seed, int chunks = 1);

}  // namespace filtrate
