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

#include <string>
#include <vector>

#include "filtrate/ensemble.hpp"

namespace filtrate {

/// Which of the three optimal strategies is active.
enum class Regime {
  Povm,             // genuine three-outcome POVM, valid for eta_l <= eta_1 <= eta_u
  AlphaProjection,  // project onto span{|psi_1>}; optimal below eta_l
  BetaProjection,   // project onto the parallel direction inside the beta span
};

std::string to_string(Regime regime);

/// The closed-form optimum of the filtering problem.
struct FilteringSolution {
  double s;       // prior-weighted overlap S = sum_j eta'_j |O_1j|^2
  Regime regime;
  double q_alpha;                    // failure probability for |psi_1|
  double q_beta;                     // prior-averaged beta failure, S / q_alpha
  std::vector<double> q_individual;  // q_j = |O_1j|^2 / q_alpha for j = 2..N
  double eta_lower;                  // S / (1 + S)
  double eta_upper;                  // S / (S + p^2), p = |psi_1_par|^2
  double q_opt;                      // the achieved minimum failure probability
  double q_povm;                     // 2 sqrt(eta_1 eta_beta S)
  double q_alpha_strategy;           // eta_1 + eta_beta S
  double q_beta_strategy;            // eta_1 p + eta_beta S / p
  double parallel_norm_sq;           // p
};

/// The three candidate failure probabilities, regardless of regime.
struct BranchValues {
  double q_povm;
  double q_alpha_strategy;
  double q_beta_strategy;
};

/// S = sum_j eta'_j |<psi_1|psi_j>|^2, the prior-weighted squared overlap of
/// the filtered state with the beta set. Requires eta_1 < 1.
double s_value(const FilteringProblem &problem);

/// Candidate failure probabilities of the three strategies.
/// Requires 0 < eta_1 < 1. When the parallel component vanishes the beta
/// branch is reported as 0 (its exact limit; S vanishes with it).
BranchValues branch_values(const FilteringProblem &problem);

/// Full optimal solution: regime selection by eta_1 against [eta_l, eta_u],
/// the optimal q_alpha clipped into its validity window, the induced
/// per-state failure probabilities, and the minimum failure probability.
/// Requires 0 < eta_1 < 1.
FilteringSolution solve(const FilteringProblem &problem);

}  // namespace filtrate
