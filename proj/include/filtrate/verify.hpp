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

#include <cstdint>
#include <random>
#include <vector>

#include "filtrate/analytic.hpp"
#include "filtrate/ensemble.hpp"

namespace filtrate {

/// Minimizer and minimum of the 1-D failure objective, found numerically.
struct OracleResult {
  double q1_star;
  double q_star;
};

/// Pure-vs-mixed-state view of the problem: rank-1 rho_alpha against the
/// prior-weighted beta ensemble.
struct MixedStateView {
  CMatrix rho_alpha;  // |psi_1><psi_1|
  CMatrix rho_beta;   // sum_j eta'_j |psi_j><psi_j|
  double fidelity;    // sqrt(<psi_1|rho_beta|psi_1>)
};

struct RudolphReport {
  double bound;  // 2 sqrt(eta_1 eta_beta) * fidelity
  double q_opt;
  bool in_povm_window;  // saturation expected only here
  bool ok;
};

struct PositivityReport {
  CMatrix m;  // M_lk = <psi_l|psi_k> - sqrt(q_l q_k) e^{i(chi_k - chi_l)}
  double min_eigenvalue;
  double max_first_row_offdiag;  // ~0 when the q's satisfy q_1 q_j = |O_1j|^2
  bool psd;                      // min eigenvalue >= -1e-10
};

/// Minimizes Q(q_1) = eta_1 q_1 + sum_j eta_j |O_1j|^2 / q_1 over the
/// validity window [max(|psi_1_par|^2, 1e-15), 1] by golden-section search
/// (absolute tolerance 1e-12; the objective is strictly convex).
/// Independent of the closed-form path in solve(). Requires 0 < eta_1 < 1.
OracleResult numeric_oracle(const FilteringProblem &problem);

/// Density-matrix formulation; checks tr(rho_a rho_b) against s_value.
MixedStateView mixed_state_view(const FilteringProblem &problem);

/// Compares q_opt with the fidelity lower bound 2 sqrt(eta_a eta_b) F:
/// equality (1e-10) inside the POVM window, q_opt >= bound - 1e-10 outside.
RudolphReport check_rudolph_bound(const FilteringProblem &problem,
                                  const FilteringSolution &solution);

/// Builds the output-overlap matrix for a given failure-probability
/// assignment and phase vector, and reports its minimum eigenvalue.
PositivityReport positivity_matrix(const FilteringProblem &problem,
                                   const std::vector<double> &q_values,
                                   const std::vector<double> &phases);

/// Haar-random state: a normalized vector of standard complex Gaussians.
PureState random_state(std::mt19937_64 &rng, Eigen::Index dim);

/// Flat-Dirichlet priors over n states.
std::vector<double> dirichlet_priors(std::mt19937_64 &rng, int n);

/// Random instance with Haar states and flat-Dirichlet priors.
FilteringProblem random_problem(std::mt19937_64 &rng, Eigen::Index dim,
                                int n_states);

}  // namespace filtrate
