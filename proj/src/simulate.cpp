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

#include "filtrate/simulate.hpp"

#include <cmath>

#include "filtrate/error.hpp"
#include "filtrate/rng.hpp"

namespace filtrate {

namespace {

constexpr double kProbabilitySumTolerance = 1e-8;
// Probabilities below numerical noise are structural zeros: snapping them
// keeps zero-probability outcomes impossible rather than astronomically rare.
constexpr double kProbabilityFloor = 1e-12;

std::size_t sample_index(const std::vector<double> &cumulative, double u) {
  std::size_t i = 0;
  while (i + 1 < cumulative.size() && u >= cumulative[i]) {
    ++i;
  }
  return i;
}

}  // namespace

SimulationReport run_simulation(const FilteringProblem &problem,
                                const Povm &povm, std::uint64_t trials,
                                std::uint64_t seed, int chunks) {
  if (trials < 1) {
    throw Error("trials must be >= 1");
  }
  if (chunks < 1) {
    throw Error("chunks must be >= 1");
  }
  const auto n = static_cast<std::size_t>(problem.n_states());

  // Born probabilities per input state, cleaned and turned into CDFs once.
  std::vector<std::array<double, 3>> born(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CVector &psi = problem.states()[i].amplitudes();
    const CMatrix *ops[3] = {&povm.pi1, &povm.pi2, &povm.pi0};
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Cplx value = psi.adjoint() * (*ops[k]) * psi;
      double prob = value.real();
      if (prob < -kProbabilitySumTolerance) {
        throw Error("outcome probability below zero: corrupt POVM");
      }
      if (prob < kProbabilityFloor) {
        prob = 0.0;
      }
      born[i][static_cast<std::size_t>(k)] = prob;
      total += prob;
    }
    if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
      throw Error("outcome probabilities do not sum to 1: corrupt POVM");
    }
    for (double &prob : born[i]) {
      prob /= total;
    }
  }

  std::vector<double> prior_cdf(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += problem.priors()[i];
    prior_cdf[i] = acc;
  }
  // Outcome CDFs built backward from 1 so a zero-probability bucket has
  // exactly zero width and can never absorb a draw.
  std::vector<std::array<double, 3>> born_cdf(n);
  for (std::size_t i = 0; i < n; ++i) {
    born_cdf[i][2] = 1.0;
    born_cdf[i][1] = 1.0 - born[i][2];
    born_cdf[i][0] = 1.0 - born[i][2] - born[i][1];
  }

  SimulationReport report;
  report.trials = trials;
  report.seed = seed;
  report.chunks = chunks;
  report.counts.assign(n, {0, 0, 0});

  const std::uint64_t base = trials / static_cast<std::uint64_t>(chunks);
  const std::uint64_t remainder = trials % static_cast<std::uint64_t>(chunks);
  for (int c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const std::uint64_t chunk_trials =
        base + (static_cast<std::uint64_t>(c) < remainder ? 1 : 0);
    for (std::uint64_t t = 0; t < chunk_trials; ++t) {
      const double u_state = uniform53(rng);
      const double u_outcome = uniform53(rng);
      const std::size_t i = sample_index(prior_cdf, u_state);
      std::size_t k = 0;
      while (k + 1 < 3 && u_outcome >= born_cdf[i][k]) {
        ++k;
      }
      ++report.counts[i][k];
    }
  }

  std::uint64_t failures = 0;
  std::uint64_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    failures += report.counts[i][2];
    wrong += (i == 0) ? report.counts[i][1] : report.counts[i][0];
  }
  report.empirical_q =
      static_cast<double>(failures) / static_cast<double>(trials);
  report.empirical_error_rate =
      static_cast<double>(wrong) / static_cast<double>(trials);
  report.expected_q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    report.expected_q += problem.priors()[i] * born[i][2];
  }
  return report;
}

}  // namespace filtrate
