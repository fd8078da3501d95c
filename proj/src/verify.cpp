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

#include "filtrate/verify.hpp"

#include <cmath>
#include <complex>

#include "filtrate/error.hpp"
#include "filtrate/rng.hpp"

namespace filtrate {

namespace {

constexpr double kGoldenTolerance = 1e-12;
constexpr double kWindowFloor = 1e-15;
constexpr double kRudolphTolerance = 1e-10;
constexpr double kPsdTolerance = 1e-10;

// Golden-section minimum of a strictly convex f on [lo, hi].
template <typename F>
double golden_minimize(F f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double inv_phi2 = (3.0 - std::sqrt(5.0)) / 2.0;
  double h = hi - lo;
  if (h <= kGoldenTolerance) {
    return (lo + hi) / 2.0;
  }
  double a = lo;
  double c = a + inv_phi2 * h;
  double d = a + inv_phi * h;
  double fc = f(c);
  double fd = f(d);
  while (h > kGoldenTolerance) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      h = hi - a;
      c = a + inv_phi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = hi - a;
      d = a + inv_phi * h;
      fd = f(d);
    }
  }
  return (a + hi) / 2.0;
}

}  // namespace

OracleResult numeric_oracle(const FilteringProblem &problem) {
  const double eta1 = problem.eta1();
  if (!(eta1 > 0.0) || !(eta1 < 1.0)) {
    throw Error("degenerate prior: filtering trivial");
  }
  const std::vector<Cplx> overlaps = problem.overlaps();
  const std::vector<double> &priors = problem.priors();
  // b = sum_j eta_j |O_1j|^2, the q_1-independent weight of the beta branch.
  double b = 0.0;
  for (std::size_t j = 0; j < overlaps.size(); ++j) {
    b += priors[j + 1] * std::norm(overlaps[j]);
  }
  const SubspaceDecomposition decomposition = decompose(problem);
  const double p = decomposition.parallel_norm_sq;

  if (b == 0.0) {
    // Beta states carrying prior weight are all orthogonal to psi_1, so the
    // objective reduces to eta_1 q_1: take the lower endpoint.
    if (p > kWindowFloor) {
      return OracleResult{p, eta1 * p};
    }
    return OracleResult{kWindowFloor, 0.0};
  }

  const double lo = std::max(p, kWindowFloor);
  const double hi = 1.0;
  auto objective = [&](double q1) { return eta1 * q1 + b / q1; };
  double q1_star = golden_minimize(objective, lo, hi);
  // Snap to whichever of {endpoint, interior} evaluates lowest; golden
  // section alone never lands exactly on a boundary.
  double best_q1 = q1_star;
  double best = objective(q1_star);
  for (double candidate : {lo, hi}) {
    double value = objective(candidate);
    if (value < best) {
      best = value;
      best_q1 = candidate;
    }
  }
  return OracleResult{best_q1, best};
}

MixedStateView mixed_state_view(const FilteringProblem &problem) {
  const std::vector<PureState> &states = problem.states();
  const std::vector<double> beta = problem.beta_priors();
  const Eigen::Index d = states[0].dim();

  MixedStateView view;
  view.rho_alpha = states[0].amplitudes() * states[0].amplitudes().adjoint();
  view.rho_beta = CMatrix::Zero(d, d);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const CVector &psi = states[j + 1].amplitudes();
    view.rho_beta += beta[j] * (psi * psi.adjoint());
  }
  const Cplx expectation =
      states[0].amplitudes().adjoint() * view.rho_beta * states[0].amplitudes();
  view.fidelity = std::sqrt(std::max(0.0, expectation.real()));
  return view;
}

RudolphReport check_rudolph_bound(const FilteringProblem &problem,
                                  const FilteringSolution &solution) {
  const double eta1 = problem.eta1();
  const MixedStateView view = mixed_state_view(problem);

  RudolphReport report;
  report.bound = 2.0 * std::sqrt(eta1 * problem.eta_beta()) * view.fidelity;
  report.q_opt = solution.q_opt;
  report.in_povm_window = solution.regime == Regime::Povm;
  if (report.in_povm_window) {
    report.ok = std::abs(report.q_opt - report.bound) <= kRudolphTolerance;
  } else {
    report.ok = report.q_opt >= report.bound - kRudolphTolerance;
  }
  return report;
}

PositivityReport positivity_matrix(const FilteringProblem &problem,
                                   const std::vector<double> &q_values,
                                   const std::vector<double> &phases) {
  const std::vector<PureState> &states = problem.states();
  const auto n = static_cast<Eigen::Index>(states.size());
  if (q_values.size() != states.size() || phases.size() != states.size()) {
    throw Error("q/phase vector length must match the number of states");
  }
  for (double q : q_values) {
    if (q < 0.0 || q > 1.0 + 1e-12) {
      throw Error("failure probabilities must lie in [0, 1]");
    }
  }

  PositivityReport report;
  report.m = gram(states);
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double root = std::sqrt(q_values[static_cast<std::size_t>(l)] *
                                    q_values[static_cast<std::size_t>(k)]);
      const double angle = phases[static_cast<std::size_t>(k)] -
                           phases[static_cast<std::size_t>(l)];
      report.m(l, k) -= root * std::polar(1.0, angle);
    }
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(report.m,
                                                Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.max_first_row_offdiag = 0.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    report.max_first_row_offdiag =
        std::max(report.max_first_row_offdiag, std::abs(report.m(0, k)));
  }
  report.psd = report.min_eigenvalue >= -kPsdTolerance;
  return report;
}

PureState random_state(std::mt19937_64 &rng, Eigen::Index dim) {
  CVector amplitudes(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    amplitudes(i) = Cplx(re, im);
  }
  const double norm = amplitudes.norm();
  if (norm < 1e-12) {
    amplitudes.setZero();
    amplitudes(0) = 1.0;
  } else {
    amplitudes /= norm;
  }
  return PureState(amplitudes);
}

std::vector<double> dirichlet_priors(std::mt19937_64 &rng, int n) {
  std::vector<double> priors(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double &prior : priors) {
    // Exponential variates normalized to the simplex give a flat Dirichlet.
    prior = -std::log(1.0 - uniform53(rng));
    total += prior;
  }
  for (double &prior : priors) {
    prior /= total;
  }
  return priors;
}

FilteringProblem random_problem(std::mt19937_64 &rng, Eigen::Index dim,
                                int n_states) {
  std::vector<PureState> states;
  states.reserve(static_cast<std::size_t>(n_states));
  for (int i = 0; i < n_states; ++i) {
    states.push_back(random_state(rng, dim));
  }
  std::vector<double> priors = dirichlet_priors(rng, n_states);
  return FilteringProblem(std::move(states), std::move(priors));
}

}  // namespace filtrate
