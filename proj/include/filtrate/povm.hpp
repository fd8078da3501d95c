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
#include <string>
#include <vector>

#include "filtrate/analytic.hpp"
#include "filtrate/ensemble.hpp"

namespace filtrate {

/// The three detection operators in the system space.
///
/// pi1 fires only on |psi_1> (alpha success), pi2 only on the beta set,
/// pi0 is the inconclusive outcome. e1 and e2 live in the two-dimensional
/// subspace spanned by |psi_1> and |psi_1_par|; in degenerate geometries
/// the unused direction is stored as the zero vector.
struct Povm {
  CMatrix pi1;
  CMatrix pi2;
  CMatrix pi0;
  double c1;
  double c2;
  CVector e1;  // unit vector orthogonal to |psi_1_par|, pi1 = c1 |e1><e1|
  CVector e2;  // unit vector orthogonal to |psi_1>
};

struct PovmValidation {
  double completeness_residual;  // max-abs entry of pi1 + pi2 + pi0 - I
  double min_eigenvalue_pi1;
  double min_eigenvalue_pi2;
  double min_eigenvalue_pi0;
  double unambiguity_alpha;  // max_j |pi1 psi_j|
  double unambiguity_beta;   // |pi2 psi_1|
  // Per input state: probabilities of (alpha success, beta success, failure).
  std::vector<std::array<double, 3>> outcome_probabilities;
  double q_alpha_residual;  // |<psi_1|pi0|psi_1> - q_alpha|
  double q_beta_residual;   // |sum_j eta'_j <psi_j|pi0|psi_j> - q_beta|
  bool ok;
  std::vector<std::string> violations;
};

/// Builds the three-outcome measurement realizing the given solution.
/// Outside the two-dimensional working subspace, pi2 acts as the identity
/// (any state there is certainly not |psi_1>). Degenerate geometries:
/// psi_1 orthogonal to the beta span collapses pi1 to |psi_1><psi_1| with
/// pi0 = 0; psi_1 inside the beta span collapses the POVM to the single
/// projective measurement pi0 = |psi_1><psi_1|, pi2 = I - pi0, pi1 = 0.
Povm build_povm(const FilteringProblem &problem,
                const FilteringSolution &solution);

/// Checks completeness (1e-12), positivity (eigenvalues >= -1e-10),
/// unambiguity (residuals <= 1e-10), and that the failure expectations
/// reproduce q_alpha and q_beta (1e-10). Violated invariants are listed
/// by name; ok is true when the list is empty.
PovmValidation validate_povm(const Povm &povm, const FilteringProblem &problem,
                             const FilteringSolution &solution);

}  // namespace filtrate
