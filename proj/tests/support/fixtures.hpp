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

#include <cmath>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "filtrate/ensemble.hpp"

namespace filtrate::testing {

inline PureState state_of(std::initializer_list<Cplx> amplitudes) {
  CVector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (const Cplx &a : amplitudes) {
    v(i++) = a;
  }
  return PureState(v);
}

/// The worked instance used throughout the suite: |psi_1> = (1,0,1)/sqrt(2)
/// filtered against the axes e_1 and e_2. Beta priors stay equal.
inline FilteringProblem three_state_problem(double eta1 = 1.0 / 3.0) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<PureState> states{state_of({r, 0.0, r}),
                                state_of({1.0, 0.0, 0.0}),
                                state_of({0.0, 1.0, 0.0})};
  const double rest = (1.0 - eta1) / 2.0;
  return FilteringProblem(std::move(states), {eta1, rest, rest});
}

inline FilteringProblem orthogonal_pair() {
  std::vector<PureState> states{state_of({1.0, 0.0}), state_of({0.0, 1.0})};
  return FilteringProblem(std::move(states), {0.5, 0.5});
}

inline FilteringProblem identical_pair() {
  std::vector<PureState> states{state_of({1.0, 0.0}), state_of({1.0, 0.0})};
  return FilteringProblem(std::move(states), {0.5, 0.5});
}

/// Same geometry, first prior replaced; beta proportions untouched.
inline FilteringProblem reweight_eta1(const FilteringProblem &problem,
                                      double eta1) {
  std::vector<double> priors = problem.priors();
  const double scale = (1.0 - eta1) / problem.eta_beta();
  priors[0] = eta1;
  for (std::size_t j = 1; j < priors.size(); ++j) {
    priors[j] *= scale;
  }
  return FilteringProblem(problem.states(), priors);
}

/// Haar-distributed unitary from the QR of a standard complex Gaussian.
inline CMatrix random_unitary(std::mt19937_64 &rng, Eigen::Index d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      g(r, c) = Cplx(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < d; ++c) {
    const Cplx diag = r_mat(c, c);
    if (std::abs(diag) > 0.0) {
      q.col(c) *= diag / std::abs(diag);
    }
  }
  return q;
}

inline FilteringProblem rotate_states(const FilteringProblem &problem,
                                      const CMatrix &u) {
  std::vector<PureState> rotated;
  rotated.reserve(problem.states().size());
  for (const PureState &s : problem.states()) {
    rotated.emplace_back(u * s.amplitudes());
  }
  return FilteringProblem(std::move(rotated), problem.priors());
}

// Frozen constants for the equal-prior three-state instance, confirmed by
// the independent oracle before being pinned here.
inline const double kThreeStateS = 0.25;
inline const double kThreeStateEtaLower = 0.2;
inline const double kThreeStateEtaUpper = 0.5;
inline const double kThreeStateQAlpha = std::sqrt(0.5);
inline const double kThreeStateQBeta = std::sqrt(0.125);
inline const double kThreeStateQOpt =
    2.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) * 0.25);
inline const double kThreeStateC1 = 2.0 - std::sqrt(2.0);

}  // namespace filtrate::testing
