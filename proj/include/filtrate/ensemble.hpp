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

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "filtrate/error.hpp"

namespace filtrate {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A normalized pure state |psi> given by its amplitude vector.
///
/// Construction renormalizes silently when the input norm deviates from 1 by
/// at most 1e-6 (text-format rounding); larger deviations are rejected.
class PureState {
 public:
  explicit PureState(CVector amplitudes);

  const CVector &amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

  /// <this|other>, conjugating this state's amplitudes.
  Cplx overlap(const PureState &other) const;

 private:
  CVector amplitudes_;
};

/// The full filtering instance: N states of common dimension with priors.
/// Index 0 is the filtered state |psi_1>; indices 1..N-1 form the beta set.
class FilteringProblem {
 public:
  FilteringProblem(std::vector<PureState> states, std::vector<double> priors);

  const std::vector<PureState> &states() const { return states_; }
  const std::vector<double> &priors() const { return priors_; }
  int n_states() const { return static_cast<int>(states_.size()); }
  Eigen::Index dim() const { return states_.front().dim(); }

  double eta1() const { return priors_.front(); }
  double eta_beta() const { return 1.0 - priors_.front(); }

  /// Renormalized beta-set priors eta'_j = eta_j / (1 - eta_1), j = 2..N.
  /// Requires eta_1 < 1.
  std::vector<double> beta_priors() const;

  /// <psi_1|psi_j> for j = 2..N (entry 0 corresponds to j = 2).
  const std::vector<Cplx> &overlaps() const { return overlaps_; }

 private:
  std::vector<PureState> states_;
  std::vector<double> priors_;
  std::vector<Cplx> overlaps_;
};

/// Projectors onto span{|psi_1>} and span{|psi_2>..|psi_N>}, plus the
/// component of |psi_1> inside the beta span.
struct SubspaceDecomposition {
  CMatrix p_alpha;          // projector onto span{|psi_1>}
  CMatrix p_beta;           // projector onto the beta span
  CVector psi1_parallel;    // P_beta |psi_1>
  double parallel_norm_sq;  // <psi_1||psi_1||> in [0, 1]
};

/// Parses the JSON problem format:
///   { "states": [[[re,im], ...], ...], "priors": [...] }
/// Amplitudes may be [re,im], [re], or a bare number. The first state is the
/// one to be filtered.
FilteringProblem parse_problem(std::string_view text);

/// Gram matrix G_ij = <psi_i|psi_j>; Hermitian PSD with unit diagonal.
CMatrix gram(const std::vector<PureState> &states);

/// Builds the alpha/beta projectors and the parallel component of |psi_1>.
/// Spans use a rank-revealing SVD; singular values below 1e-10 of the largest
/// are treated as zero.
SubspaceDecomposition decompose(const FilteringProblem &problem);

}  // namespace filtrate
