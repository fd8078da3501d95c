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

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "filtrate/analytic.hpp"
#include "filtrate/error.hpp"
#include "filtrate/povm.hpp"
#include "filtrate/simulate.hpp"
#include "support/fixtures.hpp"

namespace filtrate {
namespace {

std::uint64_t total_count(const SimulationReport &report) {
  std::uint64_t total = 0;
  for (const auto &row : report.counts) {
    total += row[0] + row[1] + row[2];
  }
  return total;
}

TEST_CASE("orthogonal ensembles never fail or err") {
  const FilteringProblem problem = testing::orthogonal_pair();
  const Povm povm = build_povm(problem, solve(problem));
  const SimulationReport report = run_simulation(problem, povm, 20000, 5);

  CHECK(report.empirical_q == 0.0);
  CHECK(report.empirical_error_rate == 0.0);
  CHECK(report.expected_q == 0.0);
  CHECK(total_count(report) == 20000);
  for (const auto &row : report.counts) {
    CHECK(row[2] == 0);
  }
  CHECK(report.counts[0][1] == 0);
  CHECK(report.counts[1][0] == 0);
}

TEST_CASE("the three-state estimate lands within sampling error") {
  const FilteringProblem problem = testing::three_state_problem();
  const FilteringSolution sol = solve(problem);
  const Povm povm = build_povm(problem, sol);
  const std::uint64_t trials = 1000000;
  const SimulationReport report = run_simulation(problem, povm, trials, 42);

  CHECK(std::abs(report.expected_q - sol.q_opt) < 1e-10);
  const double standard_error =
      std::sqrt(sol.q_opt * (1.0 - sol.q_opt) / static_cast<double>(trials));
  CHECK(std::abs(report.empirical_q - sol.q_opt) < 5.0 * standard_error);
  CHECK(report.empirical_error_rate == 0.0);
  CHECK(total_count(report) == trials);
}

TEST_CASE("identical seeds reproduce identical counts") {
  const FilteringProblem problem = testing::three_state_problem();
  const Povm povm = build_povm(problem, solve(problem));
  const SimulationReport a = run_simulation(problem, povm, 50000, 7);
  const SimulationReport b = run_simulation(problem, povm, 50000, 7);
  REQUIRE(a.counts.size() == b.counts.size());
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    CHECK(a.counts[i] == b.counts[i]);
  }

  const SimulationReport c = run_simulation(problem, povm, 50000, 8);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    any_difference = any_difference || a.counts[i] != c.counts[i];
  }
  CHECK(any_difference);
}

TEST_CASE("chunked execution is deterministic and conserves trials") {
  const FilteringProblem problem = testing::three_state_problem();
  const Povm povm = build_povm(problem, solve(problem));

  const SimulationReport a = run_simulation(problem, povm, 100003, 9, 4);
  const SimulationReport b = run_simulation(problem, povm, 100003, 9, 4);
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    CHECK(a.counts[i] == b.counts[i]);
  }
  CHECK(total_count(a) == 100003);
  CHECK(a.chunks == 4);

  // More chunks than trials still conserves the total.
  const SimulationReport sparse = run_simulation(problem, povm, 2, 3, 5);
  CHECK(total_count(sparse) == 2);
}

TEST_CASE("invalid trial counts and corrupt POVMs are rejected") {
  const FilteringProblem problem = testing::three_state_problem();
  const FilteringSolution sol = solve(problem);
  const Povm povm = build_povm(problem, sol);

  CHECK_THROWS_WITH_AS(run_simulation(problem, povm, 0, 1),
                       doctest::Contains("trials"), Error);
  CHECK_THROWS_WITH_AS(run_simulation(problem, povm, 10, 1, 0),
                       doctest::Contains("chunks"), Error);

  Povm inflated = povm;
  inflated.pi0 += 0.5 * CMatrix::Identity(3, 3);
  CHECK_THROWS_WITH_AS(run_simulation(problem, inflated, 10, 1),
                       doctest::Contains("sum"), Error);

  // Shift weight between operators so probabilities still sum to 1 but the
  // failure outcome goes negative for psi_3 (its q_3 is 0).
  Povm shifted = povm;
  shifted.pi0 -= 0.2 * CMatrix::Identity(3, 3);
  shifted.pi1 += 0.2 * CMatrix::Identity(3, 3);
  CHECK_THROWS_WITH_AS(run_simulation(problem, shifted, 10, 1),
                       doctest::Contains("below zero"), Error);
}

}  // namespace
}  // namespace filtrate
