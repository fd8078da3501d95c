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
#include "filtrate/povm.hpp"

namespace filtrate {

/// Unitary realization of the filtering POVM on system (x) 3-level ancilla.
///
/// The system may be padded by one dimension when the success vectors need
/// more room than the input dimension offers. Flat indices are system-major:
/// component (s, a) of the product space lives at index s * 3 + a. The
/// initial ancilla state is basis vector 0, which doubles as the
/// alpha-success outcome |m_1>; |m_2> and |m_3> are basis vectors 1 and 2.
struct NeumarkDilation {
  CMatrix u;  // (system_dim * 3) x (system_dim * 3)
  Eigen::Index system_dim;
  bool padded;
  int ancilla_dim;
  CVector psi0;                     // failure direction, basis vector 0
  std::vector<double> chi;          // chi_1 = 0, chi_j = arg<psi_1|psi_j>
  std::vector<CVector> psi_prime;   // success vectors, unnormalized
  std::vector<CVector> psi_dprime;  // failure vectors sqrt(q_i)e^{i chi_i}psi0
  CMatrix m_basis;                  // ancilla outcome vectors as columns
};

struct DilationReport {
  double unitarity_residual;       // max-abs entry of U*U - I
  double consistency_residual;     // ancilla statistics vs POVM expectations
  double failure_gram_residual;    // max_j |<psi''_1|psi''_j> - <psi_1|psi_j>|
  double alpha_leak;               // max m_1 outcome probability over beta inputs
  double beta_leak;                // m_2 outcome probability for the psi_1 input
  double gram_residual;            // input vs output Gram, max-abs
  // Per input state: ancilla outcome probabilities (m_1, m_2, m_3).
  std::vector<std::array<double, 3>> outcome_probabilities;
  bool ok;
  std::vector<std::string> violations;
};

/// Constructs the dilation: failure vectors from the solution's q's and the
/// overlap phases, success vectors from a PSD factorization of the output
/// overlap matrix, and U by mapping an orthonormalized input basis onto the
/// matching output combinations, completed deterministically.
NeumarkDilation build_dilation(const FilteringProblem &problem,
                               const FilteringSolution &solution);

/// U applied to (padded psi) (x) |ancilla 0>.
CVector apply_dilation(const NeumarkDilation &dilation, const PureState &state);

/// Probabilities of the three ancilla outcomes for the given input.
std::array<double, 3> ancilla_distribution(const NeumarkDilation &dilation,
                                           const PureState &state);

/// Checks unitarity (1e-12), agreement of ancilla statistics with the POVM
/// expectations (1e-10), the failure-vector Gram condition (1e-10), the
/// absence of forbidden outcome components, and input/output Gram
/// preservation (1e-10).
DilationReport verify_dilation(const NeumarkDilation &dilation,
                               const FilteringProblem &problem,
                               const Povm &povm);

}  // namespace filtrate
