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

// Acceptance gate: one line per criterion, exit 0 only if every criterion
// passes. Each criterion regenerates its own inputs so the checks stay
// independent of one another.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "filtrate/analytic.hpp"
#include "filtrate/ensemble.hpp"
#include "filtrate/neumark.hpp"
#include "filtrate/povm.hpp"
#include "filtrate/simulate.hpp"
#include "filtrate/verify.hpp"
#include "support/fixtures.hpp"

namespace filtrate {
namespace {

struct Criterion {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double>(elapsed).count();
}

std::string brief(double value) {
  std::ostringstream out;
  out.precision(2);
  out << std::scientific << value;
  return out.str();
}

FilteringProblem draw_problem(std::mt19937_64 &rng) {
  const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 4);
  const int n_states = 2 + static_cast<int>(rng() % 5);
  return random_problem(rng, dim, n_states);
}

// 1. Closed-form q_opt agrees with the independent 1-D minimization on 200
//    randomized problems, within 1e-9, in under 5 seconds.
Criterion closed_form_vs_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260823);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const FilteringProblem problem = draw_problem(rng);
    const double analytic_q = solve(problem).q_opt;
    const double oracle_q = numeric_oracle(problem).q_star;
    worst = std::max(worst, std::abs(oracle_q - analytic_q));
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-9 && elapsed < 5.0,
          "max deviation " + brief(worst) + " over 200 problems, " +
              brief(elapsed) + " s"};
}

// 2. The frozen three-state constants.
Criterion three_state_constants() {
  const FilteringSolution sol = solve(testing::three_state_problem());
  const double q_target = 2.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) * 0.25);
  double worst = std::abs(sol.s - 0.25);
  worst = std::max(worst, std::abs(sol.eta_lower - 0.2));
  worst = std::max(worst, std::abs(sol.eta_upper - 0.5));
  worst = std::max(worst, std::abs(sol.q_opt - q_target));
  return {worst < 1e-12, "max constant deviation " + brief(worst)};
}

// 3. Branch values coincide at both window edges on 50 random geometries.
Criterion boundary_continuity() {
  std::mt19937_64 rng(3033);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const FilteringProblem geometry = draw_problem(rng);
    const FilteringSolution base = solve(geometry);

    const FilteringSolution lower =
        solve(testing::reweight_eta1(geometry, base.eta_lower));
    worst = std::max(worst, std::abs(lower.q_povm - lower.q_alpha_strategy));

    const FilteringSolution upper =
        solve(testing::reweight_eta1(geometry, base.eta_upper));
    worst = std::max(worst, std::abs(upper.q_povm - upper.q_beta_strategy));
  }
  return {worst < 1e-12, "max edge mismatch " + brief(worst)};
}

// 4. POVM validity everywhere; strict in-window improvement.
Criterion povm_validity() {
  std::mt19937_64 rng(4044);
  int invalid = 0;
  int windows = 0;
  int weak = 0;
  for (int k = 0; k < 200; ++k) {
    const FilteringProblem drawn = draw_problem(rng);
    const FilteringSolution base = solve(drawn);

    // The drawn priors plus a guaranteed in-window variant.
    std::vector<FilteringProblem> cases{drawn};
    if (base.eta_upper - base.eta_lower > 2e-6) {
      cases.push_back(testing::reweight_eta1(
          drawn, 0.5 * (base.eta_lower + base.eta_upper)));
    }
    for (const FilteringProblem &problem : cases) {
      const FilteringSolution sol = solve(problem);
      const Povm povm = build_povm(problem, sol);
      if (!validate_povm(povm, problem, sol).ok) {
        ++invalid;
      }
      if (problem.eta1() > sol.eta_lower + 1e-6 &&
          problem.eta1() < sol.eta_upper - 1e-6) {
        ++windows;
        const double best_projection =
            std::min(sol.q_alpha_strategy, sol.q_beta_strategy);
        if (!(sol.q_povm < best_projection - 1e-12)) {
          ++weak;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << invalid << " invalid, " << weak << " non-strict of " << windows
         << " in-window";
  return {invalid == 0 && weak == 0 && windows > 0, detail.str()};
}

// 5. The dilation is unitary and reproduces the POVM statistics.
Criterion neumark_consistency() {
  std::mt19937_64 rng(5055);
  double worst_unitarity = 0.0;
  double worst_consistency = 0.0;
  double worst_gram = 0.0;
  for (int k = 0; k < 100; ++k) {
    const FilteringProblem problem = draw_problem(rng);
    const FilteringSolution sol = solve(problem);
    const Povm povm = build_povm(problem, sol);
    const NeumarkDilation dilation = build_dilation(problem, sol);
    const DilationReport report = verify_dilation(dilation, problem, povm);
    worst_unitarity = std::max(worst_unitarity, report.unitarity_residual);
    worst_consistency =
        std::max(worst_consistency, report.consistency_residual);
    worst_gram = std::max(worst_gram, report.failure_gram_residual);
  }
  return {worst_unitarity < 1e-12 && worst_consistency < 1e-10 &&
              worst_gram < 1e-10,
          "residuals: unitarity " + brief(worst_unitarity) + ", statistics " +
              brief(worst_consistency) + ", failure Gram " +
              brief(worst_gram)};
}

// 6. The fidelity bound is saturated inside the window and respected outside.
Criterion fidelity_saturation() {
  std::mt19937_64 rng(6066);
  int saturated = 0;
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const FilteringProblem problem = draw_problem(rng);
    const FilteringSolution sol = solve(problem);
    const double bound = 2.0 *
                         std::sqrt(problem.eta1() * problem.eta_beta()) *
                         mixed_state_view(problem).fidelity;
    if (sol.regime == Regime::Povm) {
      ++saturated;
      if (std::abs(sol.q_opt - bound) > 1e-10) {
        ++violations;
      }
    } else if (sol.q_opt < bound - 1e-10) {
      ++violations;
    }
  }
  std::ostringstream detail;
  detail << violations << " violations, " << saturated << " saturated cases";
  return {violations == 0 && saturated > 0, detail.str()};
}

// 7. A million-trial Monte Carlo run lands within 5 standard errors with no
//    conclusive errors, in under 2 seconds.
Criterion monte_carlo() {
  const FilteringProblem problem = testing::three_state_problem();
  const FilteringSolution sol = solve(problem);
  const Povm povm = build_povm(problem, sol);

  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t trials = 1000000;
  const SimulationReport report = run_simulation(problem, povm, trials, 271828);
  const double elapsed = seconds_since(start);

  const double sigma =
      std::sqrt(sol.q_opt * (1.0 - sol.q_opt) / static_cast<double>(trials));
  const double deviation = std::abs(report.empirical_q - sol.q_opt);

  std::uint64_t conclusive_errors = report.counts[0][1];
  for (std::size_t i = 1; i < report.counts.size(); ++i) {
    conclusive_errors += report.counts[i][0];
  }
  return {deviation < 5.0 * sigma && conclusive_errors == 0 && elapsed < 2.0,
          "deviation " + brief(deviation) + " (5 sigma = " +
              brief(5.0 * sigma) + "), " +
              std::to_string(conclusive_errors) + " conclusive errors, " +
              brief(elapsed) + " s"};
}

// 8. Exact degenerate limits.
Criterion degenerate_cases() {
  double worst = 0.0;

  const FilteringSolution orthogonal = solve(testing::orthogonal_pair());
  worst = std::max(worst, std::abs(orthogonal.q_opt));

  const double r = 1.0 / std::sqrt(2.0);
  std::vector<PureState> contained{testing::state_of({r, r}),
                                   testing::state_of({1.0, 0.0}),
                                   testing::state_of({0.0, 1.0})};
  const FilteringProblem inside{std::move(contained), {0.4, 0.3, 0.3}};
  const FilteringSolution projective = solve(inside);
  worst = std::max(worst,
                   std::abs(projective.eta_upper - projective.eta_lower));
  worst = std::max(worst, std::abs(projective.q_alpha_strategy -
                                   projective.q_beta_strategy));
  const bool single_strategy = projective.regime != Regime::Povm;

  const FilteringSolution identical = solve(testing::identical_pair());
  worst = std::max(worst, std::abs(identical.q_opt - 1.0));

  return {worst < 1e-12 && single_strategy,
          "max deviation " + brief(worst)};
}

}  // namespace
}  // namespace filtrate

int main() {
  using filtrate::Criterion;
  struct Entry {
    const char *name;
    Criterion (*check)();
  };
  const Entry entries[] = {
      {"closed-form vs oracle", filtrate::closed_form_vs_oracle},
      {"three-state constants", filtrate::three_state_constants},
      {"boundary continuity", filtrate::boundary_continuity},
      {"POVM validity", filtrate::povm_validity},
      {"Neumark consistency", filtrate::neumark_consistency},
      {"fidelity saturation", filtrate::fidelity_saturation},
      {"Monte Carlo", filtrate::monte_carlo},
      {"degenerate cases", filtrate::degenerate_cases},
  };

  bool all_pass = true;
  int index = 1;
  for (const Entry &entry : entries) {
    Criterion result{false, "unhandled exception"};
    try {
      result = entry.check();
    } catch (const std::exception &e) {
      result.detail = std::string("exception: ") + e.what();
    }
    all_pass = all_pass && result.pass;
    std::cout << "criterion " << index << " (" << entry.name
              << "): " << (result.pass ? "PASS" : "FAIL") << " ["
              << result.detail << "]\n";
    ++index;
  }
  return all_pass ? 0 : 1;
}
