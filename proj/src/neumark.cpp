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

#include "filtrate/neumark.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "filtrate/error.hpp"

namespace filtrate {

namespace {

constexpr double kMbetaNegativeTolerance = 1e-9;
constexpr double kFactorRankCutoff = 1e-12;
constexpr double kDependencyCutoff = 1e-10;
constexpr double kCompletionCutoff = 1e-6;
constexpr double kUnitarityTolerance = 1e-12;
constexpr double kConsistencyTolerance = 1e-10;

// Orthonormal expansion of `vectors` built by modified Gram-Schmidt with one
// reorthogonalization pass; `shadows` receives the identical row operations,
// so shadow k stays the same linear combination of the originals as basis k.
struct PairedBasis {
  std::vector<CVector> basis;
  std::vector<CVector> images;
};

PairedBasis paired_orthonormalize(const std::vector<CVector> &vectors,
                                  const std::vector<CVector> &shadows) {
  PairedBasis out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    CVector x = vectors[i];
    CVector y = shadows[i];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < out.basis.size(); ++k) {
        const Cplx coef = out.basis[k].dot(x);
        x -= coef * out.basis[k];
        y -= coef * out.images[k];
      }
    }
    const double norm = x.norm();
    if (norm > kDependencyCutoff) {
      out.basis.push_back(x / norm);
      out.images.push_back(y / norm);
    }
  }
  return out;
}

// Extends an orthonormal set to a full basis of C^dim, sweeping canonical
// basis vectors in index order.
void complete_basis(std::vector<CVector> &set, Eigen::Index dim) {
  for (Eigen::Index t = 0; t < dim && static_cast<Eigen::Index>(set.size()) < dim;
       ++t) {
    CVector cand = CVector::Zero(dim);
    cand(t) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVector &b : set) {
        cand -= b.dot(cand) * b;
      }
    }
    const double norm = cand.norm();
    if (norm > kCompletionCutoff) {
      set.push_back(cand / norm);
    }
  }
  if (static_cast<Eigen::Index>(set.size()) != dim) {
    throw Error("internal: basis completion fell short");
  }
}

// Symmetric orthonormalization: returns the closest orthonormal set, fixing
// the near-unit Gram drift the shadow vectors accumulate.
void lowdin_correct(std::vector<CVector> &set) {
  if (set.empty()) {
    return;
  }
  const auto m = static_cast<Eigen::Index>(set.size());
  CMatrix stacked(set[0].size(), m);
  for (Eigen::Index k = 0; k < m; ++k) {
    stacked.col(k) = set[static_cast<std::size_t>(k)];
  }
  const CMatrix overlap = stacked.adjoint() * stacked;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(overlap);
  Eigen::VectorXd inv_sqrt = solver.eigenvalues();
  for (Eigen::Index k = 0; k < m; ++k) {
    if (inv_sqrt(k) <= 0.0) {
      throw Error("internal: output vectors collapsed during dilation");
    }
    inv_sqrt(k) = 1.0 / std::sqrt(inv_sqrt(k));
  }
  const CMatrix corrected =
      stacked * (solver.eigenvectors() * inv_sqrt.asDiagonal() *
                 solver.eigenvectors().adjoint());
  for (Eigen::Index k = 0; k < m; ++k) {
    set[static_cast<std::size_t>(k)] = corrected.col(k);
  }
}

CVector tensor_with_ancilla(const CVector &system, const CVector &ancilla) {
  CVector out = CVector::Zero(system.size() * 3);
  for (Eigen::Index s = 0; s < system.size(); ++s) {
    for (Eigen::Index a = 0; a < 3; ++a) {
      out(s * 3 + a) = system(s) * ancilla(a);
    }
  }
  return out;
}

double expectation(const CVector &psi, const CMatrix &op) {
  const Cplx value = psi.adjoint() * op * psi;
  return value.real();
}

std::vector<double> failure_probabilities(const FilteringSolution &solution,
                                          int n_states) {
  std::vector<double> q(static_cast<std::size_t>(n_states));
  q[0] = solution.q_alpha;
  for (int i = 1; i < n_states; ++i) {
    q[static_cast<std::size_t>(i)] =
        solution.q_individual[static_cast<std::size_t>(i - 1)];
  }
  return q;
}

}  // namespace

NeumarkDilation build_dilation(const FilteringProblem &problem,
                               const FilteringSolution &solution) {
  const int n = problem.n_states();
  const Eigen::Index d = problem.dim();
  const std::vector<double> q = failure_probabilities(solution, n);

  NeumarkDilation dilation;
  dilation.ancilla_dim = 3;
  dilation.chi.resize(static_cast<std::size_t>(n));
  dilation.chi[0] = 0.0;
  for (int j = 1; j < n; ++j) {
    dilation.chi[static_cast<std::size_t>(j)] =
        std::arg(problem.overlaps()[static_cast<std::size_t>(j - 1)]);
  }

  // Output overlaps of the beta success vectors: the beta block of the
  // positivity matrix, factored into explicit coordinates.
  const CMatrix g = gram(problem.states());
  CMatrix m_beta(n - 1, n - 1);
  for (int j = 1; j < n; ++j) {
    for (int k = 1; k < n; ++k) {
      const double root = std::sqrt(q[static_cast<std::size_t>(j)] *
                                    q[static_cast<std::size_t>(k)]);
      const double angle = dilation.chi[static_cast<std::size_t>(k)] -
                           dilation.chi[static_cast<std::size_t>(j)];
      m_beta(j - 1, k - 1) = g(j, k) - root * std::polar(1.0, angle);
    }
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_beta);
  const Eigen::VectorXd &lambda = solver.eigenvalues();
  if (lambda.size() > 0 && lambda(0) < -kMbetaNegativeTolerance) {
    throw Error("internal: output overlap matrix is not PSD");
  }
  const double lambda_max = lambda.size() > 0 ? lambda(lambda.size() - 1) : 0.0;
  const double rank_cutoff = kFactorRankCutoff * std::max(1.0, lambda_max);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) > rank_cutoff) {
      kept.push_back(k);
    }
  }
  const auto rank = static_cast<Eigen::Index>(kept.size());

  // Beta factors occupy coordinates 1..rank, the alpha success vector and
  // psi0 share coordinate 0 (they sit on orthogonal ancilla outcomes);
  // pad only if that exceeds the input dimension.
  dilation.system_dim = std::max(d, 1 + rank);
  dilation.padded = dilation.system_dim > d;
  const Eigen::Index dp = dilation.system_dim;

  dilation.psi0 = CVector::Zero(dp);
  dilation.psi0(0) = 1.0;

  dilation.psi_prime.assign(static_cast<std::size_t>(n), CVector::Zero(dp));
  dilation.psi_dprime.assign(static_cast<std::size_t>(n), CVector::Zero(dp));
  dilation.psi_prime[0](0) = std::sqrt(std::max(0.0, 1.0 - q[0]));
  for (int j = 1; j < n; ++j) {
    for (Eigen::Index k = 0; k < rank; ++k) {
      const Eigen::Index idx = kept[static_cast<std::size_t>(k)];
      dilation.psi_prime[static_cast<std::size_t>(j)](1 + k) =
          std::sqrt(lambda(idx)) * std::conj(solver.eigenvectors()(j - 1, idx));
    }
  }
  for (int i = 0; i < n; ++i) {
    dilation.psi_dprime[static_cast<std::size_t>(i)] =
        std::sqrt(q[static_cast<std::size_t>(i)]) *
        std::polar(1.0, dilation.chi[static_cast<std::size_t>(i)]) *
        dilation.psi0;
  }

  dilation.m_basis = CMatrix::Identity(3, 3);
  const CVector m1 = dilation.m_basis.col(0);
  const CVector m2 = dilation.m_basis.col(1);
  const CVector m3 = dilation.m_basis.col(2);

  std::vector<CVector> ins;
  std::vector<CVector> outs;
  ins.reserve(static_cast<std::size_t>(n));
  outs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    CVector padded = CVector::Zero(dp);
    padded.head(d) = problem.states()[static_cast<std::size_t>(i)].amplitudes();
    ins.push_back(tensor_with_ancilla(padded, m1));
    const CVector &success = dilation.psi_prime[static_cast<std::size_t>(i)];
    const CVector &failure = dilation.psi_dprime[static_cast<std::size_t>(i)];
    outs.push_back(tensor_with_ancilla(success, i == 0 ? m1 : m2) +
                   tensor_with_ancilla(failure, m3));
  }

  PairedBasis paired = paired_orthonormalize(ins, outs);
  lowdin_correct(paired.images);
  const Eigen::Index total = dp * 3;
  complete_basis(paired.basis, total);
  complete_basis(paired.images, total);

  dilation.u = CMatrix::Zero(total, total);
  for (std::size_t k = 0; k < paired.basis.size(); ++k) {
    dilation.u += paired.images[k] * paired.basis[k].adjoint();
  }
  return dilation;
}

CVector apply_dilation(const NeumarkDilation &dilation,
                       const PureState &state) {
  const Eigen::Index dp = dilation.system_dim;
  if (state.dim() > dp) {
    throw Error("state dimension exceeds the dilation's system space");
  }
  CVector padded = CVector::Zero(dp);
  padded.head(state.dim()) = state.amplitudes();
  return dilation.u * tensor_with_ancilla(padded, dilation.m_basis.col(0));
}

std::array<double, 3> ancilla_distribution(const NeumarkDilation &dilation,
                                           const PureState &state) {
  const CVector out = apply_dilation(dilation, state);
  std::array<double, 3> probabilities{0.0, 0.0, 0.0};
  for (Eigen::Index s = 0; s < dilation.system_dim; ++s) {
    for (Eigen::Index a = 0; a < 3; ++a) {
      probabilities[static_cast<std::size_t>(a)] += std::norm(out(s * 3 + a));
    }
  }
  return probabilities;
}

DilationReport verify_dilation(const NeumarkDilation &dilation,
                               const FilteringProblem &problem,
                               const Povm &povm) {
  const int n = problem.n_states();
  const Eigen::Index total = dilation.system_dim * 3;

  DilationReport report;
  report.unitarity_residual =
      (dilation.u.adjoint() * dilation.u - CMatrix::Identity(total, total))
          .cwiseAbs()
          .maxCoeff();

  report.consistency_residual = 0.0;
  report.alpha_leak = 0.0;
  report.beta_leak = 0.0;
  report.outcome_probabilities.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const PureState &state = problem.states()[static_cast<std::size_t>(i)];
    const std::array<double, 3> dist = ancilla_distribution(dilation, state);
    report.outcome_probabilities.push_back(dist);
    const CVector &psi = state.amplitudes();
    const std::array<double, 3> expected{expectation(psi, povm.pi1),
                                         expectation(psi, povm.pi2),
                                         expectation(psi, povm.pi0)};
    for (int k = 0; k < 3; ++k) {
      report.consistency_residual =
          std::max(report.consistency_residual,
                   std::abs(dist[static_cast<std::size_t>(k)] -
                            expected[static_cast<std::size_t>(k)]));
    }
    if (i == 0) {
      report.beta_leak = dist[1];
    } else {
      report.alpha_leak = std::max(report.alpha_leak, dist[0]);
    }
  }

  report.failure_gram_residual = 0.0;
  for (int j = 1; j < n; ++j) {
    const Cplx lhs =
        dilation.psi_dprime[0].dot(dilation.psi_dprime[static_cast<std::size_t>(j)]);
    const Cplx rhs = problem.overlaps()[static_cast<std::size_t>(j - 1)];
    report.failure_gram_residual =
        std::max(report.failure_gram_residual, std::abs(lhs - rhs));
  }

  report.gram_residual = 0.0;
  const CMatrix g_in = gram(problem.states());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Cplx out_overlap =
          dilation.psi_dprime[static_cast<std::size_t>(i)].dot(
              dilation.psi_dprime[static_cast<std::size_t>(j)]);
      const bool same_sector = (i == 0) == (j == 0);
      if (same_sector) {
        out_overlap += dilation.psi_prime[static_cast<std::size_t>(i)].dot(
            dilation.psi_prime[static_cast<std::size_t>(j)]);
      }
      report.gram_residual =
          std::max(report.gram_residual, std::abs(out_overlap - g_in(i, j)));
    }
  }

  report.violations.clear();
  if (report.unitarity_residual > kUnitarityTolerance) {
    report.violations.emplace_back("unitarity");
  }
  if (report.consistency_residual > kConsistencyTolerance) {
    report.violations.emplace_back("ancilla statistics vs POVM");
  }
  if (report.failure_gram_residual > kConsistencyTolerance) {
    report.violations.emplace_back("failure-vector overlaps");
  }
  if (report.alpha_leak > kConsistencyTolerance) {
    report.violations.emplace_back("alpha outcome on a beta input");
  }
  if (report.beta_leak > kConsistencyTolerance) {
    report.violations.emplace_back("beta outcome on psi_1");
  }
  if (report.gram_residual > kConsistencyTolerance) {
    report.violations.emplace_back("Gram preservation");
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace filtrate
