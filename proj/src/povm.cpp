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

#include "filtrate/povm.hpp"

#include <algorithm>
#include <cmath>

#include "filtrate/error.hpp"

namespace filtrate {

namespace {

constexpr double kCompletenessTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;
constexpr double kUnambiguityTolerance = 1e-10;
constexpr double kExpectationTolerance = 1e-10;
// Below these norms a direction is numerically absent and the construction
// switches to the corresponding degenerate branch.
constexpr double kParallelCutoff = 1e-12;
constexpr double kPerpendicularCutoff = 1e-8;

// Rotates a global phase so the first non-negligible component is real
// positive; pins the otherwise free phase for snapshot determinism.
CVector phase_fixed(CVector v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-12) {
      v *= std::conj(v(k)) / std::abs(v(k));
      break;
    }
  }
  return v;
}

CMatrix hermitized(const CMatrix &a) { return 0.5 * (a + a.adjoint().eval()); }

double min_eigenvalue(const CMatrix &a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double expectation(const CVector &psi, const CMatrix &op) {
  const Cplx value = psi.adjoint() * op * psi;
  return value.real();
}

}  // namespace

Povm build_povm(const FilteringProblem &problem,
                const FilteringSolution &solution) {
  const Eigen::Index d = problem.dim();
  const CVector &psi1 = problem.states().front().amplitudes();
  const SubspaceDecomposition decomposition = decompose(problem);
  const double p = decomposition.parallel_norm_sq;

  Povm povm;
  povm.pi1 = CMatrix::Zero(d, d);
  povm.pi2 = CMatrix::Zero(d, d);
  povm.pi0 = CMatrix::Zero(d, d);
  povm.e1 = CVector::Zero(d);
  povm.e2 = CVector::Zero(d);

  const CVector perp = psi1 - decomposition.psi1_parallel;
  const double perp_norm = perp.norm();
  const double parallel_norm = decomposition.psi1_parallel.norm();

  if (parallel_norm <= kParallelCutoff) {
    // psi_1 is orthogonal to the beta span: detect it with certainty and
    // hand everything else to the beta outcome.
    povm.c1 = 1.0;
    povm.c2 = 0.0;
    povm.e1 = phase_fixed(psi1);
    povm.pi1 = povm.e1 * povm.e1.adjoint();
    povm.pi2 = CMatrix::Identity(d, d) - povm.pi1;
    return povm;
  }

  if (perp_norm <= kPerpendicularCutoff) {
    // psi_1 lies inside the beta span: both projective strategies
    // coincide and detecting psi_1 is impossible.
    povm.c1 = 0.0;
    povm.c2 = 0.0;
    povm.pi0 = psi1 * psi1.adjoint();
    povm.pi2 = CMatrix::Identity(d, d) - povm.pi0;
    return povm;
  }

  const CVector u = decomposition.psi1_parallel / parallel_norm;
  const CVector v = perp / perp_norm;
  const double q_alpha = solution.q_alpha;
  if (q_alpha < p - 1e-12) {
    throw Error("internal: q_alpha below the validity window");
  }

  // c2's textbook form divides by S; substituting q_beta = S / q_alpha
  // removes the division and covers S = 0 geometries.
  povm.c1 = std::clamp((1.0 - q_alpha) / (1.0 - p), 0.0, 1.0);
  povm.c2 = std::clamp((1.0 - p / q_alpha) / (1.0 - p), 0.0, 1.0);

  povm.e1 = phase_fixed(v);
  povm.e2 = phase_fixed(perp_norm * u - parallel_norm * v);

  const CMatrix h1_projector = u * u.adjoint() + v * v.adjoint();
  povm.pi1 = povm.c1 * (povm.e1 * povm.e1.adjoint());
  povm.pi2 = povm.c2 * (povm.e2 * povm.e2.adjoint()) +
             (CMatrix::Identity(d, d) - h1_projector);
  povm.pi1 = hermitized(povm.pi1);
  povm.pi2 = hermitized(povm.pi2);
  povm.pi0 = hermitized(CMatrix::Identity(d, d) - povm.pi1 - povm.pi2);
  return povm;
}

PovmValidation validate_povm(const Povm &povm, const FilteringProblem &problem,
                             const FilteringSolution &solution) {
  const Eigen::Index d = problem.dim();
  const std::vector<PureState> &states = problem.states();

  PovmValidation report;
  const CMatrix sum = povm.pi1 + povm.pi2 + povm.pi0;
  report.completeness_residual =
      (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  report.min_eigenvalue_pi1 = min_eigenvalue(povm.pi1);
  report.min_eigenvalue_pi2 = min_eigenvalue(povm.pi2);
  report.min_eigenvalue_pi0 = min_eigenvalue(povm.pi0);

  report.unambiguity_alpha = 0.0;
  for (std::size_t j = 1; j < states.size(); ++j) {
    report.unambiguity_alpha =
        std::max(report.unambiguity_alpha,
                 (povm.pi1 * states[j].amplitudes()).norm());
  }
  report.unambiguity_beta = (povm.pi2 * states[0].amplitudes()).norm();

  report.outcome_probabilities.reserve(states.size());
  for (const PureState &state : states) {
    const CVector &psi = state.amplitudes();
    report.outcome_probabilities.push_back({expectation(psi, povm.pi1),
                                            expectation(psi, povm.pi2),
                                            expectation(psi, povm.pi0)});
  }

  report.q_alpha_residual =
      std::abs(report.outcome_probabilities[0][2] - solution.q_alpha);
  const std::vector<double> beta = problem.beta_priors();
  double weighted_failure = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    weighted_failure += beta[j] * report.outcome_probabilities[j + 1][2];
  }
  report.q_beta_residual = std::abs(weighted_failure - solution.q_beta);

  report.violations.clear();
  if (report.completeness_residual > kCompletenessTolerance) {
    report.violations.emplace_back("completeness");
  }
  if (report.min_eigenvalue_pi1 < -kPsdTolerance) {
    report.violations.emplace_back("pi1 positivity");
  }
  if (report.min_eigenvalue_pi2 < -kPsdTolerance) {
    report.violations.emplace_back("pi2 positivity");
  }
  if (report.min_eigenvalue_pi0 < -kPsdTolerance) {
    report.violations.emplace_back("pi0 positivity");
  }
  if (report.unambiguity_alpha > kUnambiguityTolerance) {
    report.violations.emplace_back("pi1 fires on a beta state");
  }
  if (report.unambiguity_beta > kUnambiguityTolerance) {
    report.violations.emplace_back("pi2 fires on psi_1");
  }
  if (report.q_alpha_residual > kExpectationTolerance) {
    report.violations.emplace_back("q_alpha expectation");
  }
  if (report.q_beta_residual > kExpectationTolerance) {
    report.violations.emplace_back("q_beta expectation");
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace filtrate
