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

#include "filtrate/ensemble.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace filtrate {

namespace {

constexpr double kNormTolerance = 1e-6;
constexpr double kPriorSumTolerance = 1e-6;
constexpr double kSpanSingularValueCutoff = 1e-10;

}  // namespace

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw Error("state must have dimension >= 1");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "state norm " << norm << " deviates from 1 by more than "
        << kNormTolerance;
    throw Error(msg.str());
  }
  amplitudes_ /= norm;
}

Cplx PureState::overlap(const PureState &other) const {
  if (dim() != other.dim()) {
    throw Error("overlap between states of different dimension");
  }
  return amplitudes_.dot(other.amplitudes_);
}

FilteringProblem::FilteringProblem(std::vector<PureState> states,
                                   std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.size() < 2) {
    throw Error("need at least 2 states (got " +
                std::to_string(states_.size()) + ")");
  }
  const Eigen::Index d = states_.front().dim();
  for (const PureState &s : states_) {
    if (s.dim() != d) {
      throw Error("dimension mismatch between states");
    }
  }
  if (priors_.size() != states_.size()) {
    throw Error("need one prior per state");
  }
  double sum = 0.0;
  for (double eta : priors_) {
    if (eta < 0.0) {
      throw Error("negative prior");
    }
    sum += eta;
  }
  if (std::abs(sum - 1.0) > kPriorSumTolerance) {
    std::ostringstream msg;
    msg << "priors sum != 1 (got " << sum << ")";
    throw Error(msg.str());
  }
  for (double &eta : priors_) {
    eta /= sum;
  }
  overlaps_.reserve(states_.size() - 1);
  for (std::size_t j = 1; j < states_.size(); ++j) {
    overlaps_.push_back(states_.front().overlap(states_[j]));
  }
}

std::vector<double> FilteringProblem::beta_priors() const {
  const double eta_b = eta_beta();
  if (eta_b <= 0.0) {
    throw Error("beta set has zero prior");
  }
  std::vector<double> renorm(priors_.begin() + 1, priors_.end());
  for (double &eta : renorm) {
    eta /= eta_b;
  }
  return renorm;
}

namespace {

Cplx amplitude_from_json(const nlohmann::json &entry) {
  if (entry.is_number()) {
    return Cplx(entry.get<double>(), 0.0);
  }
  if (entry.is_array() && entry.size() == 1 && entry[0].is_number()) {
    return Cplx(entry[0].get<double>(), 0.0);
  }
  if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
      entry[1].is_number()) {
    return Cplx(entry[0].get<double>(), entry[1].get<double>());
  }
  throw Error("amplitude must be a number, [re] or [re,im]");
}

}  // namespace

FilteringProblem parse_problem(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("states") || !doc.contains("priors")) {
    throw Error("problem file must be an object with \"states\" and \"priors\"");
  }
  const nlohmann::json &jstates = doc["states"];
  const nlohmann::json &jpriors = doc["priors"];
  if (!jstates.is_array() || !jpriors.is_array()) {
    throw Error("\"states\" and \"priors\" must be arrays");
  }

  std::vector<PureState> states;
  states.reserve(jstates.size());
  for (const nlohmann::json &jstate : jstates) {
    if (!jstate.is_array() || jstate.empty()) {
      throw Error("each state must be a non-empty array of amplitudes");
    }
    CVector amps(jstate.size());
    for (std::size_t k = 0; k < jstate.size(); ++k) {
      amps(static_cast<Eigen::Index>(k)) = amplitude_from_json(jstate[k]);
    }
    states.emplace_back(std::move(amps));
  }

  std::vector<double> priors;
  priors.reserve(jpriors.size());
  for (const nlohmann::json &jp : jpriors) {
    if (!jp.is_number()) {
      throw Error("priors must be numbers");
    }
    priors.push_back(jp.get<double>());
  }

  return FilteringProblem(std::move(states), std::move(priors));
}

CMatrix gram(const std::vector<PureState> &states) {
  const int n = static_cast<int>(states.size());
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = states[i].overlap(states[i]);
    for (int j = i + 1; j < n; ++j) {
      g(i, j) = states[i].overlap(states[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

SubspaceDecomposition decompose(const FilteringProblem &problem) {
  const Eigen::Index d = problem.dim();
  const CVector &psi1 = problem.states().front().amplitudes();

  SubspaceDecomposition out;
  out.p_alpha = psi1 * psi1.adjoint();

  CMatrix beta_columns(d, problem.n_states() - 1);
  for (int j = 1; j < problem.n_states(); ++j) {
    beta_columns.col(j - 1) = problem.states()[j].amplitudes();
  }
  Eigen::JacobiSVD<CMatrix> svd(beta_columns, Eigen::ComputeThinU);
  const auto &sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > kSpanSingularValueCutoff * sv(0)) {
    ++rank;
  }
  const CMatrix basis = svd.matrixU().leftCols(rank);
  CMatrix p_beta = basis * basis.adjoint();
  out.p_beta = 0.5 * (p_beta + p_beta.adjoint().eval());

  out.psi1_parallel = out.p_beta * psi1;
  out.parallel_norm_sq = out.psi1_parallel.squaredNorm();
  return out;
}

}  // namespace filtrate
