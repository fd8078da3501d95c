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

#include "filtrate/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace filtrate {

namespace {

// q_j <= 1 is implied by q_alpha >= |psi_1_par|^2; a violation beyond this
// tolerance signals an upstream bug rather than a clippable rounding issue.
constexpr double kInducedFailureTolerance = 1e-10;

void require_nondegenerate_prior(const FilteringProblem &problem) {
  const double eta1 = problem.eta1();
  if (eta1 <= 0.0 || eta1 >= 1.0) {
    throw Error("degenerate prior: filtering trivial");
  }
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Povm:
      return "povm";
    case Regime::AlphaProjection:
      return "alpha_projection";
    case Regime::BetaProjection:
      return "beta_projection";
  }
  throw Error("unknown regime");
}

double s_value(const FilteringProblem &problem) {
  const std::vector<double> eta_prime = problem.beta_priors();
  double s = 0.0;
  for (std::size_t k = 0; k < eta_prime.size(); ++k) {
    s += eta_prime[k] * std::norm(problem.overlaps()[k]);
  }
  return s;
}

BranchValues branch_values(const FilteringProblem &problem) {
  require_nondegenerate_prior(problem);
  const double eta1 = problem.eta1();
  const double eta_b = problem.eta_beta();
  const double s = s_value(problem);
  const double p = decompose(problem).parallel_norm_sq;

  BranchValues out;
  out.q_povm = 2.0 * std::sqrt(eta1 * eta_b * s);
  out.q_alpha_strategy = eta1 + eta_b * s;
  out.q_beta_strategy = (p > 0.0) ? eta1 * p + eta_b * s / p : 0.0;
  return out;
}

FilteringSolution solve(const FilteringProblem &problem) {
  require_nondegenerate_prior(problem);
  const double eta1 = problem.eta1();
  const double eta_b = problem.eta_beta();
  const double s = s_value(problem);
  const double p = decompose(problem).parallel_norm_sq;

  // A positive S forces a parallel component: |O_1j| = |<psi_1_par|psi_j>|.
  if (s > 0.0 && p <= 0.0) {
    throw Error("internal: S > 0 with vanishing parallel component");
  }

  FilteringSolution sol;
  sol.s = s;
  sol.parallel_norm_sq = p;
  sol.q_povm = 2.0 * std::sqrt(eta1 * eta_b * s);
  sol.q_alpha_strategy = eta1 + eta_b * s;
  sol.q_beta_strategy = (p > 0.0) ? eta1 * p + eta_b * s / p : 0.0;

  if (s == 0.0 && p == 0.0) {
    // Orthogonal ensemble: every state is identified with certainty.
    sol.regime = Regime::Povm;
    sol.eta_lower = 0.0;
    sol.eta_upper = 1.0;
    sol.q_alpha = 0.0;
    sol.q_beta = 0.0;
    sol.q_individual.assign(problem.n_states() - 1, 0.0);
    sol.q_opt = 0.0;
    return sol;
  }

  sol.eta_lower = s / (1.0 + s);
  sol.eta_upper = s / (s + p * p);

  // Ties at the thresholds take the projective regime; all branch values
  // coincide there, so only the reported construction differs.
  if (eta1 <= sol.eta_lower) {
    sol.regime = Regime::AlphaProjection;
    sol.q_alpha = 1.0;
    sol.q_opt = sol.q_alpha_strategy;
  } else if (eta1 >= sol.eta_upper) {
    sol.regime = Regime::BetaProjection;
    sol.q_alpha = p;
    sol.q_opt = sol.q_beta_strategy;
  } else {
    sol.regime = Regime::Povm;
    sol.q_alpha = std::sqrt(eta_b * s / eta1);
    sol.q_opt = sol.q_povm;
  }

  sol.q_beta = s / sol.q_alpha;
  sol.q_individual.resize(problem.n_states() - 1);
  for (std::size_t k = 0; k < sol.q_individual.size(); ++k) {
    const double qj = std::norm(problem.overlaps()[k]) / sol.q_alpha;
    if (qj > 1.0 + kInducedFailureTolerance) {
      throw Error("internal: induced failure probability exceeds 1");
    }
    sol.q_individual[k] = std::min(qj, 1.0);
  }
  return sol;
}

}  // namespace filtrate
